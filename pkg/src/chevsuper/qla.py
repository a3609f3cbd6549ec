"""Small exact linear algebra over Q on lists of :class:`fractions.Fraction`.

Everything here works on plain Python lists so it can be shared by the
matrix classes and by the lattice code without conversions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list  # list[Fraction]


def to_fractions(v: Sequence) -> list[Fraction]:
    return [Fraction(x) for x in v]


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    a = [to_fractions(r) for r in rows]
    if not a:
        return [], []
    ncols = len(a[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} for the matrix with the given rows."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [to_fractions(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in red]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of A x = b, or None when the system is inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [to_fractions(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def primitive(v: Sequence[Fraction]) -> list[int]:
    """Scale a nonzero rational vector to a primitive integer vector.

    The first nonzero entry is made positive.
    """
    from math import gcd, lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    return [-x for x in ints] if lead < 0 else ints


class Coordinates:
    """Exact coordinates with respect to a fixed list of independent vectors.

    A square subsystem on pivot positions is inverted once; ``coords`` then
    costs one small matrix-vector product plus a membership check.
    """

    def __init__(self, vectors: Sequence[Sequence]):
        self.vectors = [to_fractions(v) for v in vectors]
        self.k = len(self.vectors)
        if self.k == 0:
            self.dim = 0
            self.positions = []
            self._inv = []
            return
        self.dim = len(self.vectors[0])
        # columns of the matrix are the vectors; pick independent rows
        cols_as_rows = self.vectors
        _, piv = rref(cols_as_rows, self.dim)
        if len(piv) != self.k:
            raise ValueError("vectors are linearly dependent")
        self.positions = piv
        square = [[self.vectors[j][p] for j in range(self.k)] for p in piv]
        self._inv = inverse(square)

    def coords(self, v: Sequence, check: bool = True) -> list[Fraction] | None:
        """Coordinates of v, or None if v is outside the span (when check)."""
        if self.k == 0:
            if check and any(x != 0 for x in v):
                return None
            return []
        b = [Fraction(v[p]) for p in self.positions]
        c = [sum((row[j] * b[j] for j in range(self.k) if b[j]), Fraction(0)) for row in self._inv]
        if check:
            for i in range(self.dim):
                s = sum((c[j] * self.vectors[j][i] for j in range(self.k) if c[j]), Fraction(0))
                if s != v[i]:
                    return None
        return c
