from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from chevsuper.superarith import (
    EVEN,
    Grassmann,
    NotInvertibleError,
    QMatrix,
    SuperMatrix,
    body_projection,
    grassmann_invert,
    grassmann_mul,
    supermatrix_invert,
)

Q = 4


def th(i, q=Q):
    return Grassmann.generator(q, i)


def one(q=Q):
    return Grassmann.scalar(q, 1)


# independent oracle: monomials as sorted tuples, sign from bubble-sorting the concatenation
def oracle_mul(x: Grassmann, y: Grassmann) -> dict:
    def mono(mask):
        return tuple(i for i in range(x.q) if mask >> i & 1)

    out = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            seq = list(mono(a) + mono(b))
            if len(set(seq)) < len(seq):
                continue
            sign = 1
            for i in range(len(seq)):
                for j in range(len(seq) - 1 - i):
                    if seq[j] > seq[j + 1]:
                        seq[j], seq[j + 1] = seq[j + 1], seq[j]
                        sign = -sign
            key = tuple(seq)
            out[key] = out.get(key, 0) + sign * ca * cb
    return {k: v for k, v in out.items() if v}


def as_tuples(x: Grassmann) -> dict:
    return {tuple(i for i in range(x.q) if m >> i & 1): c for m, c in x.terms.items()}


coef = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def grassmann(draw, parity=None, q=Q):
    masks = [m for m in range(1 << q) if parity is None or bin(m).count("1") % 2 == parity]
    terms = draw(st.dictionaries(st.sampled_from(masks), coef, max_size=6))
    return Grassmann(q, terms)


class TestGrassmannExamples:
    def test_anticommuting_generators(self):
        assert th(1) * th(2) == Grassmann.monomial(Q, [1, 2])
        assert th(2) * th(1) == -Grassmann.monomial(Q, [1, 2])

    def test_odd_square_vanishes(self):
        assert (th(1) * th(1)).is_zero()

    def test_expansion(self):
        assert (1 + th(1)) * (1 + th(2)) == 1 + th(1) + th(2) + th(1) * th(2)

    def test_inverse_examples(self):
        assert grassmann_invert(1 - th(1) * th(2)) == 1 + th(1) * th(2)
        assert grassmann_invert(Grassmann.scalar(Q, 2)) == Grassmann.scalar(Q, Fraction(1, 2))
        with pytest.raises(NotInvertibleError, match="not invertible"):
            grassmann_invert(th(1))

    def test_body(self):
        assert body_projection(3 + th(1) + 5 * th(1) * th(2)) == 3
        assert body_projection(th(1) * th(2)) == 0
        assert body_projection((1 + th(1)) * (1 - th(1))) == 1

    def test_mismatched_q(self):
        with pytest.raises(ValueError):
            grassmann_mul(th(1, 2), th(1, 3))

    def test_json_roundtrip(self):
        x = 3 + Fraction(1, 2) * th(1) - th(2) * th(3)
        assert Grassmann.from_json(Q, x.to_json()) == x

    def test_generator_out_of_range(self):
        with pytest.raises(ValueError):
            Grassmann.generator(2, 3)


class TestGrassmannProperties:
    @given(grassmann(), grassmann())
    def test_product_matches_oracle(self, x, y):
        assert as_tuples(x * y) == oracle_mul(x, y)

    @given(grassmann(), grassmann(), grassmann())
    def test_associative(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @given(st.integers(0, 1), st.integers(0, 1), st.data())
    def test_supercommutative(self, p, r, data):
        x = data.draw(grassmann(p))
        y = data.draw(grassmann(r))
        assert x * y == (-1) ** (p * r) * (y * x)

    @given(grassmann(1))
    def test_odd_elements_square_to_zero(self, z):
        assert (z * z).is_zero()

    @given(grassmann(), grassmann())
    def test_body_is_ring_map(self, x, y):
        assert body_projection(x * y) == body_projection(x) * body_projection(y)
        assert body_projection(x + y) == body_projection(x) + body_projection(y)

    @given(grassmann())
    def test_invertible_iff_body_nonzero(self, x):
        if x.body() == 0:
            with pytest.raises(NotInvertibleError):
                x.invert()
        else:
            assert x * x.invert() == 1
            assert x.invert() * x == 1


def entrywise_product(A: SuperMatrix, B: SuperMatrix) -> list:
    """Oracle: plain matrix product of Grassmann entries."""
    a, b = A.entries(), B.entries()
    n = A.size
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Grassmann(A.q)) for j in range(n)] for i in range(n)]


@st.composite
def supermatrix(draw, m=2, n=1, q=3, unit_body=False):
    size = m + n
    grid = []
    for i in range(size):
        row = []
        for j in range(size):
            same = (i < m) == (j < m)
            e = draw(grassmann(0 if same else 1, q))
            if unit_body:
                e = e.soul() + (1 if i == j else 0)
            row.append(e)
        grid.append(row)
    return SuperMatrix.from_entries(m, n, q, grid, EVEN)


class TestSuperMatrix:
    def test_identity_inverse(self):
        I = SuperMatrix.identity(2, 1, 2)
        assert supermatrix_invert(I) == I

    def test_unitriangular_inverse(self):
        q = 1
        t = Grassmann.generator(q, 1)
        g = SuperMatrix.from_entries(1, 1, q, [[one(q), t], [Grassmann(q), one(q)]], EVEN)
        inv = SuperMatrix.from_entries(1, 1, q, [[one(q), -t], [Grassmann(q), one(q)]], EVEN)
        assert g.invert() == inv

    @settings(max_examples=40, deadline=None)
    @given(supermatrix(), supermatrix())
    def test_product_matches_entrywise_oracle(self, A, B):
        assert (A @ B).entries() == entrywise_product(A, B)

    @settings(max_examples=30, deadline=None)
    @given(supermatrix(m=2, n=2, q=4, unit_body=True))
    def test_inverse_of_unipotent_body(self, g):
        I = SuperMatrix.identity(2, 2, 4)
        assert g @ g.invert() == I
        assert g.invert() @ g == I

    def test_singular_body_rejected(self):
        q = 1
        z = Grassmann(q)
        g = SuperMatrix.from_entries(1, 1, q, [[z, Grassmann.generator(q, 1)], [z, one(q)]], EVEN)
        with pytest.raises(NotInvertibleError):
            g.invert()

    def test_parity_constraint(self):
        q = 1
        with pytest.raises(ValueError):
            SuperMatrix.from_entries(1, 1, q, [[Grassmann.generator(q, 1), Grassmann(q)], [Grassmann(q), one(q)]], EVEN)

    def test_json_roundtrip(self):
        q = 2
        t = Grassmann.generator(q, 1)
        g = SuperMatrix.from_entries(1, 1, q, [[2 + t * Grassmann.generator(q, 2), t], [t, one(q)]], EVEN)
        assert SuperMatrix.from_json(g.to_json()) == g

    def test_large_entries_stay_exact(self):
        big = QMatrix.from_rows([[2 ** 40, 1], [0, 1]])
        p = big @ big @ big
        assert p[0, 0] == 2 ** 120


def test_qmatrix_inverse():
    a = QMatrix.from_rows([[2, 1], [1, 1]])
    assert a @ a.inverse() == QMatrix.identity(2)
    with pytest.raises(NotInvertibleError):
        QMatrix.from_rows([[1, 2], [2, 4]]).inverse()
