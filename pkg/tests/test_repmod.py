from fractions import Fraction

import pytest

from chevsuper.kostant import RationalModule, defining_module, is_admissible
from chevsuper.lattice import IntegerLattice
from chevsuper.repmod import (
    EvenModule,
    RepresentationError,
    check_cartan_closed_form,
    induce,
    induced_lattice,
    is_faithful,
    is_rational,
    natural_even_module,
    verify_representation,
)
from chevsuper.superarith import QMatrix

from conftest import algebra, chevalley, datum, induced

INDUCED = [("gl", 1, 1), ("gl", 2, 1), ("sl", 2, 1), ("osp", 1, 2)]


@pytest.mark.parametrize("key", INDUCED)
def test_dimension(key):
    V = induced(*key)
    assert V.dim == 2 ** len(datum(*key).odd_roots) * V.even_module.dim


def test_gl11_dim_is_8():
    assert induced("gl", 1, 1).dim == 8


@pytest.mark.parametrize("key", INDUCED)
def test_representation_property(key):
    rep = verify_representation(induced(*key))
    assert rep.passed, rep.failure


def test_gl11_anticommutator_on_all_vectors():
    g = algebra("gl", 1, 1)
    V = induced("gl", 1, 1)
    e12, e21, e11, e22 = (V.action[g.index(n)] for n in ("E12", "E21", "E11", "E22"))
    assert e12 @ e21 + e21 @ e12 == e11 + e22


@pytest.mark.parametrize("key", INDUCED)
def test_cartan_closed_form_and_rationality(key):
    V = induced(*key)
    assert check_cartan_closed_form(V)
    assert is_rational(V, chevalley(*key))


@pytest.mark.parametrize("key", INDUCED)
def test_faithful(key):
    assert is_faithful(induced(*key))


def test_defining_representation():
    assert verify_representation(defining_module(algebra("gl", 2, 1))).passed


def test_zeroed_matrix_fails():
    V = induced("gl", 1, 1)
    g = V.algebra
    action = dict(V.action)
    action[g.index("E12")] = QMatrix.zeros(V.dim)
    bad = RationalModule(g, action, V.parities)
    assert not verify_representation(bad).passed


def test_bad_even_module_rejected():
    g = algebra("gl", 1, 1)
    Vt = natural_even_module(g)
    action = dict(Vt.action)
    action[g.index("E11")] = QMatrix.from_rows([[1, 1], [0, 0]])
    with pytest.raises(RepresentationError):
        induce(g, chevalley("gl", 1, 1), EvenModule(g, action, Vt.parities))


@pytest.mark.parametrize("key", [("gl", 1, 1), ("gl", 2, 1)])
def test_induced_lattice_admissible(key):
    V = induced(*key)
    Mt = IntegerLattice.standard(V.even_module.dim)
    M = induced_lattice(V, Mt)
    assert M.rank == 2 ** V.N * Mt.rank
    assert is_admissible(V, M, chevalley(*key)).passed


def _halved(d):
    return IntegerLattice.from_generators(
        [[Fraction(1, 2) if (i, j) == (0, 0) else int(i == j) for j in range(d)] for i in range(d)])


def test_halved_lattice_propagates():
    V = induced("gl", 2, 1)
    rep = is_admissible(V, induced_lattice(V, _halved(V.even_module.dim)), chevalley("gl", 2, 1))
    assert not rep.passed
    assert rep.violations[0][0].startswith("X(-1,1,0)")


def test_halving_harmless_without_even_roots():
    # g0 of gl(1|1) is the torus: rescaling a weight vector keeps stability
    V = induced("gl", 1, 1)
    assert is_admissible(V, induced_lattice(V, _halved(2)), chevalley("gl", 1, 1)).passed


def test_custom_order():
    g, rd, b = algebra("gl", 1, 1), datum("gl", 1, 1), chevalley("gl", 1, 1)
    order = list(reversed(rd.odd_order()))
    V = induce(g, b, natural_even_module(g), order)
    assert verify_representation(V).passed
    with pytest.raises(ValueError):
        induce(g, b, natural_even_module(g), order[:1])
