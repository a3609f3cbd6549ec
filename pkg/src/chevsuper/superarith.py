"""Exact arithmetic: rationals, Grassmann algebras over Q and supermatrices.

Rationals are :class:`fractions.Fraction`.  A Grassmann element over
``Λ_Q[θ_1..θ_q]`` is a sparse map from monomials (bitmasks, bit ``i-1`` for
``θ_i``) to nonzero rationals.  Rational matrices (:class:`QMatrix`) and
supermatrices (:class:`SuperMatrix`) are stored densely as integer numpy arrays
over one common denominator; int64 is used while no overflow is possible and
Python integers (object arrays) otherwise, so every operation is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

#: Default cap on the number of Grassmann generators.
MAX_GENERATORS = 8

_INT64_SAFE = 1 << 62


class NotInvertibleError(ArithmeticError):
    pass


# --------------------------------------------------------------------------
# monomial combinatorics


def popcount(x: int) -> int:
    return bin(x).count("1")


def monomial_sign(a: int, b: int) -> int:
    """Sign of θ^a θ^b after sorting generators; 0 if they share a generator."""
    if a & b:
        return 0
    inversions = 0
    bb = b
    while bb:
        low = bb & -bb
        # generators of a with larger index than this generator of b
        inversions += popcount(a & ~((low << 1) - 1))
        bb ^= low
    return -1 if inversions & 1 else 1


@lru_cache(maxsize=None)
def sign_table(q: int) -> np.ndarray:
    size = 1 << q
    t = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        for b in range(size):
            t[a, b] = monomial_sign(a, b)
    t.setflags(write=False)
    return t


@lru_cache(maxsize=None)
def mask_parity(q: int) -> np.ndarray:
    p = np.array([popcount(m) & 1 for m in range(1 << q)], dtype=np.int64)
    p.setflags(write=False)
    return p


def _check_q(q: int) -> None:
    if not 0 <= q <= MAX_GENERATORS:
        raise ValueError(f"generator count {q} outside 0..{MAX_GENERATORS}")


# --------------------------------------------------------------------------
# Grassmann algebra


class Grassmann:
    """Immutable element of the Grassmann algebra Λ_Q[θ_1, ..., θ_q]."""

    __slots__ = ("q", "terms", "_hash")

    def __init__(self, q: int, terms: Mapping[int, object] | None = None):
        _check_q(q)
        clean = {}
        for mask, c in (terms or {}).items():
            if mask >> q:
                raise ValueError(f"monomial {mask:b} uses a generator beyond θ_{q}")
            c = Fraction(c)
            if c:
                clean[mask] = c
        self.q = q
        self.terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def scalar(cls, q: int, c) -> "Grassmann":
        return cls(q, {0: c})

    @classmethod
    def generator(cls, q: int, i: int) -> "Grassmann":
        """θ_i (1-based)."""
        if not 1 <= i <= q:
            raise ValueError(f"no generator θ_{i} in Λ[θ_1..θ_{q}]")
        return cls(q, {1 << (i - 1): 1})

    @classmethod
    def monomial(cls, q: int, indices: Iterable[int], c=1) -> "Grassmann":
        out = cls.scalar(q, c)
        for i in indices:
            out = out * cls.generator(q, i)
        return out

    # basic queries
    def body(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements (0 for zero), None otherwise."""
        ps = {popcount(m) & 1 for m in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def even_part(self) -> "Grassmann":
        return Grassmann(self.q, {m: c for m, c in self.terms.items() if not popcount(m) & 1})

    def odd_part(self) -> "Grassmann":
        return Grassmann(self.q, {m: c for m, c in self.terms.items() if popcount(m) & 1})

    def soul(self) -> "Grassmann":
        return Grassmann(self.q, {m: c for m, c in self.terms.items() if m})

    def min_degree(self) -> int | None:
        return min((popcount(m) for m in self.terms), default=None)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # arithmetic
    def _coerce(self, other) -> "Grassmann":
        if isinstance(other, Grassmann):
            if other.q != self.q:
                raise ValueError(f"mismatched generator counts {self.q} and {other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return Grassmann.scalar(self.q, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Grassmann(self.q, terms)

    __radd__ = __add__

    def __neg__(self):
        return Grassmann(self.q, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Grassmann(self.q, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[int, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                s = monomial_sign(a, b)
                if s:
                    terms[a | b] = terms.get(a | b, 0) + s * ca * cb
        return Grassmann(self.q, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "Grassmann":
        if k < 0:
            return self.invert() ** (-k)
        out = Grassmann.scalar(self.q, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def invert(self) -> "Grassmann":
        """Inverse via the finite geometric series in the nilpotent soul."""
        b = self.body()
        if b == 0:
            raise NotInvertibleError("not invertible: zero body")
        # x = b (1 + n) with n nilpotent
        n = self.soul() * (1 / b)
        out = Grassmann.scalar(self.q, 1)
        term = Grassmann.scalar(self.q, 1)
        for _ in range(self.q):
            term = term * (-n)
            if term.is_zero():
                break
            out = out + term
        return out * (1 / b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Grassmann.scalar(self.q, other)
        if not isinstance(other, Grassmann):
            return NotImplemented
        return self.q == other.q and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.q, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (popcount(m), m)):
            c = self.terms[m]
            mono = "".join(f"θ{i + 1}" for i in range(self.q) if m >> i & 1)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # serialization
    def to_json(self) -> list:
        return [
            {
                "monomial": [i + 1 for i in range(self.q) if m >> i & 1],
                "num": str(c.numerator),
                "den": str(c.denominator),
            }
            for m, c in sorted(self.terms.items(), key=lambda kv: (popcount(kv[0]), kv[0]))
        ]

    @classmethod
    def from_json(cls, q: int, data: Sequence[Mapping]) -> "Grassmann":
        out = cls(q)
        for t in data:
            c = Fraction(int(t["num"]), int(t["den"]))
            out = out + cls.monomial(q, [int(i) for i in t["monomial"]], c)
        return out


def grassmann_mul(x: Grassmann, y: Grassmann) -> Grassmann:
    return x * y


def grassmann_invert(x: Grassmann) -> Grassmann:
    return x.invert()


def body_projection(x: Grassmann) -> Fraction:
    return x.body()


# --------------------------------------------------------------------------
# integer array helpers


def _as_int_array(a) -> np.ndarray:
    a = np.asarray(a)
    if a.dtype == object:
        return a
    return a.astype(np.int64, copy=False)


def _absmax(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return int(max(-a.min(), a.max()))
    return int(np.abs(a).max())


def _shrink(a: np.ndarray) -> np.ndarray:
    """Return an int64 array when the values allow it."""
    if a.dtype == object and _absmax(a) < _INT64_SAFE:
        return a.astype(np.int64)
    return a


def _widen(a: np.ndarray) -> np.ndarray:
    return a if a.dtype == object else a.astype(object)


def _array_gcd(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        g = 0
        for x in a.flat:
            if x:
                g = math.gcd(g, int(x))
                if g == 1:
                    break
        return g
    return int(np.gcd.reduce(a, axis=None))


def _normalize(num: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    if den <= 0:
        raise ValueError("denominator must be positive")
    if den == 1:
        return _shrink(num), 1
    g = math.gcd(_array_gcd(num), den)
    if g > 1:
        num = num // g
        den //= g
    return _shrink(num), den


def _rescale(num: np.ndarray, factor: int) -> np.ndarray:
    if factor == 1:
        return num
    if num.dtype != object and _absmax(num) * factor >= _INT64_SAFE:
        num = _widen(num)
    return num * factor


def _common(a_num, a_den, b_num, b_den):
    den = math.lcm(a_den, b_den)
    return _rescale(a_num, den // a_den), _rescale(b_num, den // b_den), den


def _safe_add(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if x.dtype != object and y.dtype != object and _absmax(x) + _absmax(y) >= _INT64_SAFE:
        return _widen(x) + _widen(y)
    return x + y


def _safe_matmul(x: np.ndarray, y: np.ndarray, fanout: int = 1) -> np.ndarray:
    inner = x.shape[-1]
    if x.dtype == object or y.dtype == object or _absmax(x) * _absmax(y) * max(inner, 1) * fanout >= _INT64_SAFE:
        return np.matmul(_widen(x), _widen(y))
    return np.matmul(x, y)


# --------------------------------------------------------------------------
# rational matrices


class QMatrix:
    """Immutable exact rational matrix ``num / den``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        num = _as_int_array(num)
        if num.ndim != 2:
            raise ValueError("QMatrix needs a 2-d array")
        num, den = _normalize(num, int(den))
        num.setflags(write=False)
        self.num = num
        self.den = den

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        fr = [[Fraction(x) for x in r] for r in rows]
        nrows = len(fr)
        ncols = len(fr[0]) if fr else 0
        den = 1
        for r in fr:
            for x in r:
                den = math.lcm(den, x.denominator)
        num = np.empty((nrows, ncols), dtype=object)
        for i, r in enumerate(fr):
            for j, x in enumerate(r):
                num[i, j] = int(x * den)
        return cls(num, den)

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> "QMatrix":
        return cls(np.zeros((r, r if c is None else c), dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "QMatrix":
        a = np.zeros((n, n), dtype=np.int64)
        a[i, j] = 1
        return cls(a)

    @classmethod
    def diagonal(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(int(self.num[i, j]), self.den)

    def tolist(self) -> list[list[Fraction]]:
        return [[Fraction(int(x), self.den) for x in row] for row in self.num]

    def flat(self) -> list[Fraction]:
        return [Fraction(int(x), self.den) for x in self.num.flat]

    def is_zero(self) -> bool:
        return not np.any(self.num)

    def is_integral(self) -> bool:
        return self.den == 1

    def is_diagonal(self) -> bool:
        off = self.num.copy()
        np.fill_diagonal(off, 0)
        return not np.any(off)

    def diagonal_entries(self) -> list[Fraction]:
        return [Fraction(int(self.num[i, i]), self.den) for i in range(min(self.shape))]

    def transpose(self) -> "QMatrix":
        return QMatrix(self.num.T.copy(), self.den)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        a, b, den = _common(self.num, self.den, other.num, other.den)
        return QMatrix(_safe_add(a, b), den)

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self.num, self.den)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def scale(self, c) -> "QMatrix":
        c = Fraction(c)
        return QMatrix(_rescale(self.num, c.numerator), self.den * c.denominator)

    def __mul__(self, c) -> "QMatrix":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(_safe_matmul(self.num, other.num), self.den * other.den)

    def __pow__(self, k: int) -> "QMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        out = QMatrix.identity(self.shape[0])
        for _ in range(k):
            out = out @ self
        return out

    def inverse(self) -> "QMatrix":
        from .qla import inverse

        try:
            return QMatrix.from_rows(inverse(self.tolist()))
        except ZeroDivisionError:
            raise NotInvertibleError("not invertible: singular matrix") from None

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.den == other.den and self.shape == other.shape and bool(np.all(self.num == other.num))

    def __hash__(self):
        return hash((self.den, self.shape, tuple(int(x) for x in self.num.flat)))

    def __repr__(self):
        return f"QMatrix({self.tolist()!r})"

    def to_json(self) -> list:
        return [[_qstr(x) for x in row] for row in self.tolist()]

    @classmethod
    def from_json(cls, data) -> "QMatrix":
        return cls.from_rows([[parse_rational(x) for x in row] for row in data])


def _qstr(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_str(x) -> str:
    """Canonical "p/q" (or "p") string of a rational."""
    return _qstr(x)


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise TypeError("boolean is not a rational")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise TypeError(f"cannot read a rational from {s!r}")


def supercommutator(x: QMatrix, y: QMatrix, px: int, py: int) -> QMatrix:
    """[x, y] = xy - (-1)^{|x||y|} yx."""
    if px and py:
        return x @ y + y @ x
    return x @ y - y @ x


# --------------------------------------------------------------------------
# supermatrices over Λ_Q[θ_1..θ_q]

EVEN, ODD = "even", "odd"


class SuperMatrix:
    """Square (m+n)x(m+n) matrix with Grassmann entries, block shape m|n.

    Entries are stored as ``planes[mask] / den``: ``planes[mask][i, j]`` is the
    coefficient of the monomial ``θ^mask`` in entry (i, j).  Products are the
    plain matrix products of the Grassmann-valued entries.
    """

    __slots__ = ("m", "n", "q", "planes", "den", "parity")

    def __init__(self, m: int, n: int, q: int, planes, den: int = 1, parity: str | None = None, check: bool = True):
        _check_q(q)
        planes = _as_int_array(planes)
        size = m + n
        if planes.shape != (1 << q, size, size):
            raise ValueError(f"planes must have shape {(1 << q, size, size)}, got {planes.shape}")
        planes, den = _normalize(planes, int(den))
        planes.setflags(write=False)
        self.m, self.n, self.q = m, n, q
        self.planes = planes
        self.den = den
        self.parity = parity
        if check and parity is not None and not self._respects_parity(parity):
            raise ValueError(f"entries do not respect the declared {parity} grading")

    # construction
    @property
    def size(self) -> int:
        return self.m + self.n

    @classmethod
    def zeros(cls, m: int, n: int, q: int, parity: str | None = EVEN) -> "SuperMatrix":
        return cls(m, n, q, np.zeros((1 << q, m + n, m + n), dtype=np.int64), 1, parity, check=False)

    @classmethod
    def identity(cls, m: int, n: int, q: int) -> "SuperMatrix":
        p = np.zeros((1 << q, m + n, m + n), dtype=np.int64)
        p[0] = np.eye(m + n, dtype=np.int64)
        return cls(m, n, q, p, 1, EVEN, check=False)

    @classmethod
    def from_scalar_matrix(cls, m: int, n: int, coeff: Grassmann, mat: QMatrix, parity: str | None = None) -> "SuperMatrix":
        """The matrix ``coeff * mat`` for a Grassmann scalar and a rational matrix."""
        q = coeff.q
        den = mat.den
        for c in coeff.terms.values():
            den = math.lcm(den, c.denominator * mat.den)
        factors = {mask: c.numerator * (den // (c.denominator * mat.den)) for mask, c in coeff.terms.items()}
        big = _absmax(mat.num) * max((abs(f) for f in factors.values()), default=0) >= _INT64_SAFE
        src = _widen(mat.num) if big else mat.num
        planes = np.zeros((1 << q, m + n, m + n), dtype=object if big else np.int64)
        for mask, f in factors.items():
            planes[mask] = src * f
        return cls(m, n, q, planes, den, parity)

    @classmethod
    def from_entries(cls, m: int, n: int, q: int, entries: Sequence[Sequence[Grassmann]], parity: str | None = None) -> "SuperMatrix":
        size = m + n
        if len(entries) != size or any(len(r) != size for r in entries):
            raise ValueError(f"expected a {size}x{size} grid")
        den = 1
        for row in entries:
            for e in row:
                for c in e.terms.values():
                    den = math.lcm(den, c.denominator)
        planes = np.zeros((1 << q, size, size), dtype=object)
        for i, row in enumerate(entries):
            for j, e in enumerate(row):
                if e.q != q:
                    raise ValueError("mismatched generator count")
                for mask, c in e.terms.items():
                    planes[mask, i, j] = c.numerator * (den // c.denominator)
        return cls(m, n, q, planes, den, parity)

    @classmethod
    def diagonal(cls, m: int, n: int, values: Sequence[Grassmann]) -> "SuperMatrix":
        q = values[0].q
        size = m + n
        grid = [[values[i] if i == j else Grassmann(q) for j in range(size)] for i in range(size)]
        return cls.from_entries(m, n, q, grid, EVEN)

    # access
    def entry(self, i: int, j: int) -> Grassmann:
        col = self.planes[:, i, j]
        return Grassmann(self.q, {mask: Fraction(int(c), self.den) for mask, c in enumerate(col) if c})

    def entries(self) -> list[list[Grassmann]]:
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]

    def plane(self, mask: int) -> QMatrix:
        return QMatrix(self.planes[mask].copy(), self.den)

    def body(self) -> QMatrix:
        """Entrywise body projection π_A."""
        return self.plane(0)

    def nonzero_masks(self) -> list[int]:
        return [int(k) for k in np.flatnonzero(self.planes.reshape(self.planes.shape[0], -1).any(axis=1))]

    def _respects_parity(self, parity: str) -> bool:
        m = self.m
        par = mask_parity(self.q)
        even_masks = par == 0
        odd_masks = ~even_masks
        p = self.planes
        diag_even = not (np.any(p[odd_masks][:, :m, :m]) or np.any(p[odd_masks][:, m:, m:]))
        off_odd = not (np.any(p[even_masks][:, :m, m:]) or np.any(p[even_masks][:, m:, :m]))
        diag_odd = not (np.any(p[even_masks][:, :m, :m]) or np.any(p[even_masks][:, m:, m:]))
        off_even = not (np.any(p[odd_masks][:, :m, m:]) or np.any(p[odd_masks][:, m:, :m]))
        if parity == EVEN:
            return diag_even and off_odd
        if parity == ODD:
            return diag_odd and off_even
        raise ValueError(f"unknown parity {parity!r}")

    def all_entries_even(self) -> bool:
        odd = mask_parity(self.q) == 1
        return not np.any(self.planes[odd])

    def off_diagonal_zero(self) -> bool:
        m = self.m
        return not (np.any(self.planes[:, :m, m:]) or np.any(self.planes[:, m:, :m]))

    def is_identity(self) -> bool:
        return self == SuperMatrix.identity(self.m, self.n, self.q)

    # arithmetic
    def _compatible(self, other: "SuperMatrix") -> None:
        if (self.m, self.n, self.q) != (other.m, other.n, other.q):
            raise ValueError("supermatrices of different shapes or algebras")

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._compatible(other)
        a, b, den = _common(self.planes, self.den, other.planes, other.den)
        parity = self.parity if self.parity == other.parity else None
        return SuperMatrix(self.m, self.n, self.q, _safe_add(a, b), den, parity, check=False)

    def __neg__(self) -> "SuperMatrix":
        return SuperMatrix(self.m, self.n, self.q, -self.planes, self.den, self.parity, check=False)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-other)

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._compatible(other)
        q = self.q
        signs = sign_table(q)
        a_masks = self.nonzero_masks()
        b_masks = np.array(other.nonzero_masks(), dtype=np.int64)
        big = self.planes.dtype == object or other.planes.dtype == object or (
            _absmax(self.planes) * _absmax(other.planes) * self.size * (1 << q) >= _INT64_SAFE
        )
        A = _widen(self.planes) if big else self.planes
        B = _widen(other.planes) if big else other.planes
        out = np.zeros_like(A) if big else np.zeros(A.shape, dtype=np.int64)
        for a in a_masks:
            bs = b_masks[(b_masks & a) == 0] if b_masks.size else b_masks
            if bs.size == 0:
                continue
            prods = np.matmul(A[a], B[bs])
            s = signs[a, bs]
            for k, b in enumerate(bs):
                if s[k] > 0:
                    out[a | b] += prods[k]
                else:
                    out[a | b] -= prods[k]
        parity = _product_parity(self.parity, other.parity)
        return SuperMatrix(self.m, self.n, q, out, self.den * other.den, parity, check=False)

    def scalar_mul(self, c: Grassmann) -> "SuperMatrix":
        """Left multiplication of every entry by a Grassmann scalar."""
        s = SuperMatrix.from_scalar_matrix(self.m, self.n, c, QMatrix.identity(self.size))
        return s @ self

    def invert(self) -> "SuperMatrix":
        """Exact inverse: invert the body, then a finite Neumann series."""
        body_inv = self.body().inverse()
        binv = SuperMatrix.from_scalar_matrix(self.m, self.n, Grassmann.scalar(self.q, 1), body_inv, EVEN)
        # self = body (I + K) with K = body^{-1} soul nilpotent
        k = binv @ self - SuperMatrix.identity(self.m, self.n, self.q)
        out = SuperMatrix.identity(self.m, self.n, self.q)
        term = SuperMatrix.identity(self.m, self.n, self.q)
        neg_k = -k
        for _ in range(self.q + 1):
            term = term @ neg_k
            if not term.nonzero_masks():
                break
            out = out + term
        res = out @ binv
        res.parity = self.parity if self.parity == EVEN else None
        return res

    def block(self, rows: slice, cols: slice) -> tuple[np.ndarray, int]:
        return self.planes[:, rows, cols], self.den

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (
            (self.m, self.n, self.q, self.den) == (other.m, other.n, other.q, other.den)
            and bool(np.all(self.planes == other.planes))
        )

    def __hash__(self):
        return hash((self.m, self.n, self.q, self.den, self.planes.tobytes() if self.planes.dtype != object else tuple(self.planes.flat)))

    def __repr__(self):
        return f"SuperMatrix({self.m}|{self.n}, q={self.q}, entries={self.entries()!r})"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "q": self.q,
            "entries": [self.entry(i, j).to_json() for i in range(self.size) for j in range(self.size)],
        }

    @classmethod
    def from_json(cls, data: Mapping, q: int | None = None, parity: str | None = None) -> "SuperMatrix":
        m, n = int(data["m"]), int(data["n"])
        q = int(data.get("q", q if q is not None else 0)) if q is None else q
        size = m + n
        flat = data["entries"]
        if len(flat) != size * size:
            raise ValueError(f"expected {size * size} entries, got {len(flat)}")
        grid = [[Grassmann.from_json(q, flat[i * size + j]) for j in range(size)] for i in range(size)]
        return cls.from_entries(m, n, q, grid, parity)


def _product_parity(p1, p2):
    if p1 is None or p2 is None:
        return None
    return EVEN if p1 == p2 else ODD


def supermatrix_mul(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    return x @ y


def supermatrix_invert(g: SuperMatrix) -> SuperMatrix:
    return g.invert()
