from fractions import Fraction

import numpy as np
import pytest

from chevsuper.liesuper import (
    ExcludedFamilyError,
    UnsupportedFamilyError,
    bracket,
    build,
    form_table,
    is_nondegenerate,
    verify_jacobi,
    verify_realization,
)

from conftest import ACCEPTANCE_FAMILIES, algebra

SUPERDIMS = {
    ("gl", 1, 1): (2, 2),
    ("gl", 2, 1): (5, 4),
    ("sl", 2, 1): (4, 4),
    ("sl", 3, 1): (9, 6),
    ("osp", 1, 2): (3, 2),
    ("osp", 2, 2): (4, 4),
    ("osp", 3, 2): (6, 6),
    ("osp", 2, 4): (11, 8),
}


@pytest.mark.parametrize("key", list(SUPERDIMS))
def test_superdimension(key):
    # gl: (m²+n², 2mn); sl: one less even; osp(M|2n): (M(M-1)/2 + n(2n+1), 2Mn)
    assert algebra(*key).super_dim() == SUPERDIMS[key]


def test_jacobi_and_realization(family):
    g = algebra(*family)
    rep = verify_jacobi(g)
    assert rep.passed, rep.counterexample
    assert verify_realization(g)
    assert is_nondegenerate(form_table(g))


def test_bracket_matches_matrix_supercommutator():
    g = algebra("gl", 2, 1)
    # oracle: numpy matrices
    E = {b.name: np.array([[int(x) for x in r] for r in b.realization.tolist()]) for b in g.basis}
    x, y = g.index("E13"), g.index("E31")
    want = E["E13"] @ E["E31"] + E["E31"] @ E["E13"]
    got = bracket(g, g.unit(x), g.unit(y))
    mat = sum(int(c) * E[g.basis[k].name] for k, c in enumerate(got) if c)
    assert (mat == want).all()


def test_corrupted_table_fails_jacobi():
    g = algebra("gl", 2, 1)
    table = dict(g.bracket_table)
    i, j = g.index("E12"), g.index("E23")
    k = g.index("E13")
    table[(i, j)] = ((k, Fraction(2)),)
    rep = verify_jacobi(g.with_bracket_table(table))
    assert not rep.passed
    assert rep.counterexample is not None


@pytest.mark.parametrize("fam", ["p", "q", "d21a"])
def test_excluded_families(fam):
    with pytest.raises(ExcludedFamilyError):
        build(fam, 2, 2)


def test_unsupported_sizes():
    with pytest.raises(UnsupportedFamilyError):
        build("sl", 2, 2)
    with pytest.raises(UnsupportedFamilyError):
        build("osp", 2, 3)
    with pytest.raises(UnsupportedFamilyError):
        build("gl", 0, 1)
    with pytest.raises(UnsupportedFamilyError):
        build("e8", 1, 1)


def test_supertrace_form_on_gl11():
    g = algebra("gl", 1, 1)
    B = form_table(g)
    e11, e22 = g.unit(g.index("E11")), g.unit(g.index("E22"))
    assert B(e11, e11) == 1
    assert B(e22, e22) == -1
    assert B(e11, e22) == 0
