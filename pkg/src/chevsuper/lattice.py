"""Integer lattices: Hermite normal form, membership, and rational lattices.

Lattices are handled as row spans of integer matrices.  ``hermite_normal_form``
returns the canonical row-style HNF (upper echelon, positive pivots, entries
above each pivot reduced into ``[0, pivot)``), so two generator sets span the
same lattice iff their HNFs coincide.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .qla import rref


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Row HNF of the lattice spanned by ``rows`` (zero rows dropped)."""
    a = [[int(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    a = [r for r in a if any(r)]
    out: list[list[int]] = []
    col = 0
    while a and col < ncols:
        nz = [r for r in a if r[col]]
        rest = [r for r in a if not r[col]]
        if not nz:
            col += 1
            continue
        # fold all rows with a nonzero entry in this column into one pivot row
        piv = nz[0]
        for r in nz[1:]:
            g, x, y = _xgcd(piv[col], r[col])
            p, s = piv[col] // g, r[col] // g
            new_piv = [x * u + y * v for u, v in zip(piv, r)]
            reduced = [s * u - p * v for u, v in zip(piv, r)]
            piv = new_piv
            if any(reduced):
                rest.append(reduced)
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        a = [r for r in rest if any(r)]
        col += 1
    # reduce entries above pivots
    pivots = [next(j for j, x in enumerate(r) if x) for r in out]
    for i in range(len(out)):
        pc, pv = pivots[i], out[i][pivots[i]]
        for k in range(i):
            f = out[k][pc] // pv
            if f:
                out[k] = [u - f * v for u, v in zip(out[k], out[i])]
    return out


def hnf_pivots(hnf: Sequence[Sequence[int]]) -> list[int]:
    return [next(j for j, x in enumerate(r) if x) for r in hnf]


def in_lattice(hnf: Sequence[Sequence[int]], v: Sequence) -> bool:
    """Exact membership of a rational vector in the row lattice of an HNF."""
    w = [Fraction(x) for x in v]
    if any(x.denominator != 1 for x in w):
        return False
    w = [int(x) for x in w]
    for row, pc in zip(hnf, hnf_pivots(hnf)):
        if any(w[:pc]):
            return False
        if w[pc] % row[pc]:
            return False
        f = w[pc] // row[pc]
        if f:
            w = [u - f * r for u, r in zip(w, row)]
    return not any(w)


def lattice_coordinates(hnf: Sequence[Sequence[int]], v: Sequence) -> list[Fraction]:
    """Rational coordinates of v in the HNF basis (v must lie in its Q-span)."""
    w = [Fraction(x) for x in v]
    coords = []
    for row, pc in zip(hnf, hnf_pivots(hnf)):
        f = w[pc] / row[pc]
        coords.append(f)
        if f:
            w = [u - f * r for u, r in zip(w, row)]
    if any(w):
        raise ValueError("vector outside the rational span of the lattice")
    return coords


def is_saturated(rows: Sequence[Sequence[int]]) -> bool:
    """True iff the lattice equals its saturation Z^n ∩ Q·L (gcd of maximal minors is 1)."""
    basis = hermite_normal_form(rows)
    k = len(basis)
    if k == 0:
        return True
    n = len(basis[0])
    g = 0
    for cols in combinations(range(n), k):
        g = math.gcd(g, _int_det([[r[c] for c in cols] for r in basis]))
        if g == 1:
            return True
    return g == 1


def _int_det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k]), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


class IntegerLattice:
    """Full-rank lattice ``(1/den) · Span_Z(cols)`` inside Q^d.

    ``cols`` is kept in Hermite normal form and ``den`` is reduced against the
    content of the basis, so equal lattices have equal representations.
    """

    __slots__ = ("dim", "den", "hnf")

    def __init__(self, dim: int, den: int, hnf: Sequence[Sequence[int]]):
        self.dim = dim
        self.den = den
        self.hnf = [list(r) for r in hnf]

    @classmethod
    def from_generators(cls, vectors: Iterable[Sequence], dim: int | None = None) -> "IntegerLattice":
        vecs = [[Fraction(x) for x in v] for v in vectors]
        if dim is None:
            if not vecs:
                raise ValueError("cannot infer the dimension of an empty generator set")
            dim = len(vecs[0])
        den = 1
        for v in vecs:
            for x in v:
                den = math.lcm(den, x.denominator)
        ints = [[int(x * den) for x in v] for v in vecs]
        hnf = hermite_normal_form(ints, dim)
        g = 0
        for r in hnf:
            for x in r:
                g = math.gcd(g, x)
        g = math.gcd(g, den) if g else den
        if g > 1:
            hnf = [[x // g for x in r] for r in hnf]
            den //= g
        return cls(dim, den, hnf)

    @classmethod
    def standard(cls, dim: int) -> "IntegerLattice":
        return cls.from_generators([[int(i == j) for j in range(dim)] for i in range(dim)])

    @property
    def rank(self) -> int:
        return len(self.hnf)

    def is_full_rank(self) -> bool:
        return self.rank == self.dim

    def basis(self) -> list[list[Fraction]]:
        """Generators as rational vectors in module coordinates."""
        return [[Fraction(x, self.den) for x in r] for r in self.hnf]

    def integer_basis(self) -> list[list[int]]:
        return [list(r) for r in self.hnf]

    def contains(self, v: Sequence) -> bool:
        return in_lattice(self.hnf, [Fraction(x) * self.den for x in v])

    def coordinates(self, v: Sequence) -> list[Fraction]:
        return lattice_coordinates(self.hnf, [Fraction(x) * self.den for x in v])

    def scaled(self, c) -> "IntegerLattice":
        return IntegerLattice.from_generators([[x * Fraction(c) for x in b] for b in self.basis()], self.dim)

    def __eq__(self, other):
        if not isinstance(other, IntegerLattice):
            return NotImplemented
        return (self.dim, self.den, self.hnf) == (other.dim, other.den, other.hnf)

    def __hash__(self):
        return hash((self.dim, self.den, tuple(map(tuple, self.hnf))))

    def __repr__(self):
        return f"IntegerLattice(dim={self.dim}, den={self.den}, hnf={self.hnf})"

    def to_json(self) -> dict:
        return {"den": str(self.den), "cols": [[str(x) for x in r] for r in self.hnf]}

    @classmethod
    def from_json(cls, data) -> "IntegerLattice":
        den = int(data["den"])
        cols = [[Fraction(int(x), den) for x in c] for c in data["cols"]]
        if not cols:
            raise ValueError("lattice has no generators")
        return cls.from_generators(cols, len(cols[0]))


def rational_rank(vectors: Sequence[Sequence]) -> int:
    return len(rref(vectors)[1]) if vectors else 0
