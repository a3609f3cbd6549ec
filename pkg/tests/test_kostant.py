import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from chevsuper.kostant import (
    adjoint_module,
    cartan_binomial_action,
    defining_module,
    divided_power_action,
    generalized_binomial,
    generate_admissible,
    is_admissible,
    kostant_generators,
    odd_vector_action,
)
from chevsuper.lattice import IntegerLattice
from chevsuper.liesuper import bracket
from chevsuper.repmod import natural_even_module
from chevsuper.superarith import QMatrix

from conftest import algebra, chevalley, datum


def R(rd, *coords):
    return rd.find(coords)


def gl21():
    return algebra("gl", 2, 1), datum("gl", 2, 1), chevalley("gl", 2, 1)


def test_divided_powers_natural():
    g, rd, b = gl21()
    V = defining_module(g)
    a = R(rd, 1, -1, 0)
    assert divided_power_action(V, a, 2, b).is_zero()
    assert divided_power_action(V, a, 0, b) == QMatrix.identity(3)


def test_divided_power_adjoint_sl2():
    g, rd, b = gl21()
    ad = adjoint_module(g)
    a = R(rd, 1, -1, 0)
    X = ad.rho(b.X(a))
    # oracle: square via explicit Fraction loops
    rows = X.tolist()
    sq = [[sum(rows[i][k] * rows[k][j] for k in range(len(rows))) / 2 for j in range(len(rows))] for i in range(len(rows))]
    assert divided_power_action(ad, a, 2, b).tolist() == sq
    assert not divided_power_action(ad, a, 2, b).is_zero()


@pytest.mark.parametrize("lam,n,want", [(3, 2, 3), (-1, 2, 1), (5, 0, 1), (-2, 3, -4)])
def test_binomials(lam, n, want):
    assert generalized_binomial(lam, n) == want


def test_cartan_binomial_matrix():
    g, rd, b = gl21()
    ad = adjoint_module(g)
    m = cartan_binomial_action(ad, 0, 2, b)
    assert m.is_diagonal() and m.is_integral()
    assert cartan_binomial_action(ad, 0, 0, b) == QMatrix.identity(g.dim)


def test_non_rational_module_rejected():
    g, rd, b = gl21()
    V = defining_module(g)
    from chevsuper.kostant import RationalModule, NotRationalError

    half = RationalModule(g, {i: m.scale(Fraction(1, 2)) for i, m in V.action.items()}, V.parities)
    with pytest.raises(NotRationalError, match="not rational"):
        cartan_binomial_action(half, 0, 1, b)


def test_odd_vector_action():
    g, rd, b = algebra("gl", 1, 1), datum("gl", 1, 1), chevalley("gl", 1, 1)
    V = defining_module(g)
    assert odd_vector_action(V, R(rd, 1, -1), b) == QMatrix.unit(2, 0, 1)
    g, rd, b = algebra("osp", 1, 2), datum("osp", 1, 2), chevalley("osp", 1, 2)
    V = defining_module(g)
    for r in rd.odd_roots:
        Y = odd_vector_action(V, r, b)
        half = V.rho(bracket(g, b.X(r), b.X(r))).scale(Fraction(1, 2))
        assert Y @ Y == half


def test_odd_square_zero_when_bracket_vanishes():
    g, rd, b = gl21()
    V = defining_module(g)
    for r in rd.odd_roots:
        if not any(bracket(g, b.X(r), b.X(r))):
            Y = odd_vector_action(V, r, b)
            assert (Y @ Y).is_zero()


def test_standard_lattice_admissible():
    g, rd, b = algebra("gl", 1, 1), datum("gl", 1, 1), chevalley("gl", 1, 1)
    assert is_admissible(defining_module(g), IntegerLattice.standard(2), b).passed


def test_halved_vector_violation():
    g, rd, b = gl21()
    V = natural_even_module(g)
    M = IntegerLattice.from_generators([[Fraction(1, 2), 0, 0], [0, 1, 0], [0, 0, 1]])
    rep = is_admissible(V, M, b)
    assert not rep.passed
    gen, vec = rep.violations[0]
    assert gen.startswith("X(-1,1,0)")
    assert vec == [Fraction(1, 2), 0, 0]


def test_empty_generator_set():
    g, rd, b = gl21()
    M = IntegerLattice.from_generators([[Fraction(1, 3), 0, 0], [0, 7, 0], [0, 0, 1]])
    assert is_admissible(defining_module(g), M, b, generators=[]).passed


def test_closure_examples():
    g, rd, b = gl21()
    V = natural_even_module(g)
    assert generate_admissible(V, [[1, 0, 0]], b) == IntegerLattice.from_generators([[1, 0, 0], [0, 1, 0]])
    g, rd, b = algebra("gl", 1, 1), datum("gl", 1, 1), chevalley("gl", 1, 1)
    assert generate_admissible(defining_module(g), [[1, 0]], b) == IntegerLattice.standard(2)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.fractions(-2, 2, max_denominator=4), min_size=3, max_size=3), min_size=1, max_size=3))
def test_closure_is_admissible_and_idempotent(seed):
    g, rd, b = gl21()
    V = defining_module(g)
    if not any(any(v) for v in seed):
        return
    L = generate_admissible(V, seed, b)
    if L.is_full_rank():
        assert is_admissible(V, L, b).passed
    assert generate_admissible(V, L, b) == L
    for v in seed:
        assert L.contains(v)


@pytest.mark.parametrize("c", [1, 2, 3, 5])
def test_scaling_invariance(c):
    g, rd, b = gl21()
    ad = adjoint_module(g)
    M = generate_admissible(ad, [[1 if i == j else 0 for j in range(g.dim)] for i in range(g.dim)], b)
    assert is_admissible(ad, M, b).passed
    assert is_admissible(ad, M.scaled(c), b).passed


@pytest.mark.parametrize("a,c", [(0, 1), (1, 1), (1, 2), (2, 1)])
def test_divided_power_identity(a, c):
    g, rd, b = gl21()
    ad = adjoint_module(g)
    for r in rd.even_roots:
        lhs = divided_power_action(ad, r, a, b) @ divided_power_action(ad, r, c, b)
        rhs = divided_power_action(ad, r, a + c, b).scale(math.comb(a + c, a))
        assert lhs == rhs


def test_generators_are_integral_on_standard_lattice():
    g, rd, b = gl21()
    for gen in kostant_generators(defining_module(g), b):
        assert gen.matrix.is_integral(), gen.label
