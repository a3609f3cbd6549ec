"""
Admissible lattices and induced modules
=======================================

Start from the natural representation of the even part of gl(2|1), induce
up to a module for all of gl(2|1), and test integrality of lattices under
the divided powers of the Kostant form.
"""

from fractions import Fraction

from chevsuper import IntegerLattice, analyze, build, induce, induced_lattice, is_admissible, natural_even_module, propose_basis
from chevsuper.kostant import generate_admissible
from chevsuper.repmod import check_cartan_closed_form, verify_representation

g = build("gl", 2, 1)
basis = propose_basis(g, analyze(g))
Vt = natural_even_module(g)
V = induce(g, basis, Vt)
print(f"induced module: dim {V.dim} = 2^{V.N} * {Vt.dim}, parity split {V.parity_split}")
print("representation:", verify_representation(V).passed)
print("Cartan weights match the closed form:", check_cartan_closed_form(V))

M = induced_lattice(V, IntegerLattice.standard(Vt.dim))
print("standard induced lattice admissible:", is_admissible(V, M, basis).passed)

# shrink one generator of the even lattice: some divided power escapes
half = IntegerLattice.from_generators([[Fraction(1, 2), 0, 0], [0, 1, 0], [0, 0, 1]])
rep = is_admissible(V, induced_lattice(V, half), basis, first_only=True)
label, vec = rep.violations[0]
print("halved lattice fails at", label, "on a vector with entries", sorted({str(x) for x in vec if x}))

# the smallest admissible lattice through a single vector of Vt
print("closure of Z e1 in Vt:", generate_admissible(Vt, [[1, 0, 0]], basis).basis())
