"""Exact computations with Chevalley bases, Kostant lattices and Chevalley supergroups.

Classical Lie superalgebras gl(m|n), sl(m|n) (m != n) and osp(M|2n) are built
from their matrix realizations over Q.  Points of the associated supergroups are
evaluated over finite Grassmann algebras and factored into an even part and odd
coordinates.
"""

__version__ = "0.1.0"

from .superarith import Grassmann, NotInvertibleError, QMatrix, SuperMatrix, body_projection
from .lattice import IntegerLattice, hermite_normal_form
from .liesuper import (
    ExcludedFamilyError,
    LieSuperalgebra,
    UnsupportedFamilyError,
    build,
    build_gl,
    build_osp,
    build_sl,
    bracket,
    verify_jacobi,
)
from .roots import Root, RootDatum, analyze, coroot, positive_system, root_decomposition, root_string
from .chevalley import ChevalleyBasis, chevalley_superalgebra, propose_basis, structure_constants, verify_chevalley
from .kostant import RationalModule, generate_admissible, is_admissible
from .repmod import EvenModule, InducedModule, induce, induced_lattice, natural_even_module, verify_representation
from .supergroup import (
    EvenRoot,
    FactoredPoint,
    GroupWord,
    OddRoot,
    Torus,
    evaluate_word,
    factor_point,
    gl_block_decompose,
    recompose,
    x_even,
    x_odd,
    torus_elem,
)
