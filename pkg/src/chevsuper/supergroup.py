"""Points of Chevalley supergroups over Grassmann algebras, and their factorization."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .chevalley import ChevalleyBasis
from .kostant import RationalModule, cartan_eigenvalues, nilpotency_degree
from .lattice import IntegerLattice
from .roots import Root, RootDatum
from .superarith import EVEN, Grassmann, NotInvertibleError, QMatrix, SuperMatrix, mask_parity, popcount


class FactorizationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# tokens


@dataclass(frozen=True)
class EvenRoot:
    root: Root
    t: Grassmann

    def __post_init__(self):
        if self.root.parity != 0:
            raise ValueError("EvenRoot needs an even root")
        if self.t.parity() != 0:
            raise ValueError("parameter of an even root token must be even")


@dataclass(frozen=True)
class OddRoot:
    root: Root
    theta: Grassmann

    def __post_init__(self):
        if self.root.parity != 1:
            raise ValueError("OddRoot needs an odd root")
        if not self.theta.is_zero() and self.theta.parity() != 1:
            raise ValueError("parameter of an odd root token must be odd")


@dataclass(frozen=True)
class Torus:
    i: int
    u: Grassmann

    def __post_init__(self):
        if self.u.parity() != 0:
            raise ValueError("torus parameter must be even")
        if self.u.body() == 0:
            raise ValueError("torus parameter must be invertible (nonzero body)")


Token = Union[EvenRoot, OddRoot, Torus]


@dataclass(frozen=True)
class GroupWord:
    q: int
    tokens: tuple = ()

    def __post_init__(self):
        for tok in self.tokens:
            param = tok.t if isinstance(tok, EvenRoot) else tok.theta if isinstance(tok, OddRoot) else tok.u
            if param.q != self.q:
                raise ValueError("all token parameters must live in the same Grassmann algebra")

    def __len__(self):
        return len(self.tokens)

    def inverse(self) -> "GroupWord":
        inv = []
        for tok in reversed(self.tokens):
            if isinstance(tok, EvenRoot):
                inv.append(EvenRoot(tok.root, -tok.t))
            elif isinstance(tok, OddRoot):
                inv.append(OddRoot(tok.root, -tok.theta))
            else:
                inv.append(Torus(tok.i, tok.u.invert()))
        return GroupWord(self.q, tuple(inv))

    def to_json(self, rd: RootDatum) -> list:
        out = []
        for tok in self.tokens:
            if isinstance(tok, EvenRoot):
                out.append({"kind": "even", "root": rd.index(tok.root), "param": tok.t.to_json()})
            elif isinstance(tok, OddRoot):
                out.append({"kind": "odd", "root": rd.index(tok.root), "param": tok.theta.to_json()})
            else:
                out.append({"kind": "torus", "cartan": tok.i, "param": tok.u.to_json()})
        return out

    @classmethod
    def from_json(cls, data: Sequence, rd: RootDatum, q: int) -> "GroupWord":
        toks = []
        for k, item in enumerate(data):
            kind = item.get("kind")
            param = Grassmann.from_json(q, item["param"])
            if kind == "even":
                toks.append(EvenRoot(rd.roots[int(item["root"])], param))
            elif kind == "odd":
                toks.append(OddRoot(rd.roots[int(item["root"])], param))
            elif kind == "torus":
                toks.append(Torus(int(item["cartan"]), param))
            else:
                raise ValueError(f"token {k}: unknown kind {kind!r}")
        return cls(q, tuple(toks))


# ---------------------------------------------------------------------------
# per-module cached data


class _Context:
    def __init__(self, V: RationalModule, basis: ChevalleyBasis):
        self.V = V
        self.basis = basis
        par = list(V.parities)
        if par != sorted(par):
            raise ValueError("module basis must list even vectors before odd ones")
        self.m, self.n = V.parity_split
        self._powers: dict = {}
        self._eigen: dict = {}
        self._systems: dict = {}

    def divided_powers(self, alpha: Root) -> list[QMatrix]:
        if alpha not in self._powers:
            x = self.V.rho(self.basis.X(alpha))
            top = nilpotency_degree(x)
            out, p = [], QMatrix.identity(self.V.dim)
            for n in range(top):
                out.append(p.scale(Fraction(1, math.factorial(n))))
                p = p @ x
            self._powers[alpha] = out
        return self._powers[alpha]

    def eigenvalues(self, i: int) -> list[int]:
        if i not in self._eigen:
            self._eigen[i] = cartan_eigenvalues(self.V, self.basis.cartan_elements[i])
        return self._eigen[i]

    def odd_system(self, order: tuple) -> list[QMatrix]:
        if order not in self._systems:
            mats = [self.V.rho(self.basis.X(g)) for g in order]
            if _gram(_stack(mats)[0]) is None:
                raise FactorizationError("module not faithful on g₁")
            self._systems[order] = mats
        return self._systems[order]


def _stack(mats: Sequence[QMatrix]) -> tuple[np.ndarray, int]:
    """Flattened numerators over one common denominator, as Python-int arrays."""
    den = math.lcm(*(m.den for m in mats)) if mats else 1
    rows = [np.asarray(m.num, dtype=object).reshape(-1) * (den // m.den) for m in mats]
    return (np.stack(rows) if rows else np.zeros((0, 0), dtype=object)), den


def _gram(Z: np.ndarray) -> list[list[Fraction]] | None:
    from .qla import inverse

    try:
        return inverse((Z @ Z.T).tolist())
    except ZeroDivisionError:
        return None


class _OddSolver:
    """Exact coordinates of matrices in the span of fixed independent matrices Z_i."""

    def __init__(self, mats: Sequence[QMatrix]):
        self.Z, self.den = _stack(mats)
        self.ginv = _gram(self.Z)
        if self.ginv is None:
            raise FactorizationError("module not faithful on g₁")

    def solve(self, target: QMatrix) -> list[Fraction] | None:
        t = np.asarray(target.num, dtype=object).reshape(-1)
        rhs = [Fraction(int(x) * self.den, target.den) for x in self.Z @ t]
        c = [sum((a * b for a, b in zip(row, rhs)), Fraction(0)) for row in self.ginv]
        L = math.lcm(*(x.denominator for x in c)) if c else 1
        ci = np.array([int(x * L) for x in c], dtype=object)
        if not np.array_equal((ci @ self.Z) * target.den, t * (L * self.den)):
            return None
        return c


_CONTEXTS: dict = {}


def _context(V: RationalModule, basis: ChevalleyBasis | None) -> _Context:
    if basis is None:
        basis = getattr(V, "chevalley", None)
        if basis is None:
            raise ValueError("a Chevalley basis is required for this module")
    key = (id(V), id(basis))
    ctx = _CONTEXTS.get(key)
    if ctx is None or ctx.V is not V or ctx.basis is not basis:
        if len(_CONTEXTS) > 64:
            _CONTEXTS.clear()
        ctx = _CONTEXTS[key] = _Context(V, basis)
    return ctx


def _series(ctx: _Context, t: Grassmann, mats: Sequence[QMatrix]) -> SuperMatrix:
    """Σ_n t^n mats[n]."""
    out = None
    tn = Grassmann.scalar(t.q, 1)
    for n, mat in enumerate(mats):
        if n:
            tn = tn * t
        if tn.is_zero():
            break
        term = SuperMatrix.from_scalar_matrix(ctx.m, ctx.n, tn, mat, EVEN)
        out = term if out is None else out + term
    if out is None:
        return SuperMatrix.identity(ctx.m, ctx.n, t.q)
    out.parity = EVEN
    return out


def x_even(V: RationalModule, alpha: Root, t: Grassmann, basis: ChevalleyBasis | None = None) -> SuperMatrix:
    """exp(t ρ(X_α)) = Σ t^n ρ(X_α)^n / n!."""
    if alpha.parity != 0:
        raise ValueError("x_even needs an even root")
    if t.parity() != 0:
        raise ValueError("x_even needs an even parameter")
    ctx = _context(V, basis)
    return _series(ctx, t, ctx.divided_powers(alpha))


def x_odd(V: RationalModule, gamma: Root, theta: Grassmann, basis: ChevalleyBasis | None = None) -> SuperMatrix:
    """1 + θ ρ(X_γ)."""
    if gamma.parity != 1:
        raise ValueError("x_odd needs an odd root")
    if not theta.is_zero() and theta.parity() != 1:
        raise ValueError("x_odd needs an odd parameter")
    ctx = _context(V, basis)
    x = V.rho(ctx.basis.X(gamma))
    return _series(ctx, theta, [QMatrix.identity(V.dim), x])


def torus_elem(V: RationalModule, i: int, u: Grassmann, basis: ChevalleyBasis | None = None) -> SuperMatrix:
    """diag(u^λ) for the eigenvalues λ of H_i."""
    if u.parity() != 0:
        raise ValueError("torus parameter must be even")
    if u.body() == 0:
        raise NotInvertibleError("not invertible: torus parameter has zero body")
    ctx = _context(V, basis)
    lams = ctx.eigenvalues(i)
    cache = {lam: u ** lam for lam in set(lams)}
    return SuperMatrix.diagonal(ctx.m, ctx.n, [cache[lam] for lam in lams])


def token_matrix(V: RationalModule, tok: Token, basis: ChevalleyBasis | None = None) -> SuperMatrix:
    if isinstance(tok, EvenRoot):
        return x_even(V, tok.root, tok.t, basis)
    if isinstance(tok, OddRoot):
        return x_odd(V, tok.root, tok.theta, basis)
    if isinstance(tok, Torus):
        return torus_elem(V, tok.i, tok.u, basis)
    raise TypeError(f"unknown token {tok!r}")


def evaluate_word(w: GroupWord, V: RationalModule, basis: ChevalleyBasis | None = None) -> SuperMatrix:
    ctx = _context(V, basis)
    out = SuperMatrix.identity(ctx.m, ctx.n, w.q)
    for tok in w.tokens:
        out = out @ token_matrix(V, tok, ctx.basis)
    out.parity = EVEN
    return out


def even_projection(w: GroupWord, V: RationalModule, basis: ChevalleyBasis | None = None) -> QMatrix:
    """Product of the even tokens evaluated at the bodies of their parameters."""
    ctx = _context(V, basis)
    out = QMatrix.identity(V.dim)
    for tok in w.tokens:
        if isinstance(tok, EvenRoot):
            b = tok.t.body()
            mat = QMatrix.zeros(V.dim)
            for n, p in enumerate(ctx.divided_powers(tok.root)):
                mat = mat + p.scale(b ** n)
            out = out @ mat
        elif isinstance(tok, Torus):
            b = tok.u.body()
            out = out @ QMatrix.diagonal([b ** lam for lam in ctx.eigenvalues(tok.i)])
    return out


# ---------------------------------------------------------------------------
# decompositions


def block_diagonal_part(g: SuperMatrix) -> SuperMatrix:
    m = g.m
    planes = np.array(g.planes, copy=True)
    planes[:, :m, m:] = 0
    planes[:, m:, :m] = 0
    return SuperMatrix(g.m, g.n, g.q, planes, g.den, g.parity, check=False)


def gl_block_decompose(g: SuperMatrix) -> tuple[SuperMatrix, SuperMatrix]:
    """g = diag(a, d) · [[I, a⁻¹β], [d⁻¹γ, I]]."""
    diag = block_diagonal_part(g)
    diag.parity = g.parity
    off = diag.invert() @ g
    off.parity = g.parity
    return diag, off


@dataclass
class AlmostSplit:
    g0_part: SuperMatrix
    g1_part: SuperMatrix
    projection_consistent: bool


def almost_split_decompose(g: SuperMatrix) -> AlmostSplit:
    """GL-level split g = g₀ g₁ with the check π_A(g) = π_A(g₀)."""
    g0, g1 = gl_block_decompose(g)
    return AlmostSplit(g0, g1, g.body() == g0.body())


@dataclass(frozen=True)
class FactoredPoint:
    g0: SuperMatrix
    theta: tuple[Grassmann, ...]
    order: tuple[Root, ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {"g0": self.g0.to_json(), "theta": [t.to_json() for t in self.theta]}

    @classmethod
    def from_json(cls, data, order: Sequence[Root] = ()) -> "FactoredPoint":
        g0 = SuperMatrix.from_json(data["g0"])
        return cls(g0, tuple(Grassmann.from_json(g0.q, t) for t in data["theta"]), tuple(order))


def _default_order(V: RationalModule, ctx: _Context) -> tuple:
    order = getattr(V, "order", None)
    return tuple(order) if order else tuple(ctx.basis.rd.odd_order())


def odd_product(V: RationalModule, order: Sequence[Root], theta: Sequence[Grassmann],
                basis: ChevalleyBasis | None = None, inverse: bool = False) -> SuperMatrix:
    """Π x_γᵢ(ϑᵢ) in the given order, or its inverse."""
    ctx = _context(V, basis)
    q = theta[0].q if theta else 0
    out = SuperMatrix.identity(ctx.m, ctx.n, q)
    pairs = list(zip(order, theta))
    if inverse:
        pairs = [(g, -t) for g, t in reversed(pairs)]
    for g, t in pairs:
        if not t.is_zero():
            out = out @ x_odd(V, g, t, ctx.basis)
    return out


def recompose(fp: FactoredPoint, V: RationalModule, order: Sequence[Root] | None = None,
              basis: ChevalleyBasis | None = None) -> SuperMatrix:
    ctx = _context(V, basis)
    order = tuple(order) if order is not None else (fp.order or _default_order(V, ctx))
    out = fp.g0 @ odd_product(V, order, fp.theta, ctx.basis)
    out.parity = EVEN
    return out


def factor_point(g: SuperMatrix, V: RationalModule, order: Sequence[Root] | None = None,
                 basis: ChevalleyBasis | None = None) -> FactoredPoint:
    """Unique (g₀, ϑ) with g = g₀ · Π x_γᵢ(ϑᵢ), found by peeling odd degrees."""
    ctx = _context(V, basis)
    order = tuple(order) if order is not None else _default_order(V, ctx)
    mats = ctx.odd_system(order)
    q = g.q
    N = len(order)
    try:
        body = g.body()
        body.inverse()
        # off-diagonal content at the lowest odd degree is body(g) · Σ δ_i ρ(X_γᵢ)
        solver = _OddSolver([body @ y for y in mats])
    except NotInvertibleError:
        raise FactorizationError("point not in the big-cell product") from None
    theta = [Grassmann(q) for _ in range(N)]
    for _ in range(q // 2 + 2):
        h = g @ odd_product(V, order, theta, ctx.basis, inverse=True)
        live = [mk for mk in h.nonzero_masks() if _has_off_diagonal(h, mk)]
        if not live:
            if not h.all_entries_even():
                raise FactorizationError("point not in the big-cell product")
            h.parity = EVEN
            return FactoredPoint(h, tuple(theta), order)
        if any(not popcount(mk) & 1 for mk in live):
            raise FactorizationError("point not in the big-cell product")
        k = min(popcount(mk) for mk in live)
        updates = [dict() for _ in range(N)]
        for mask in (mk for mk in live if popcount(mk) == k):
            c = solver.solve(_off_diagonal(h.plane(mask), ctx.m))
            if c is None:
                raise FactorizationError("point not in the big-cell product")
            for i, ci in enumerate(c):
                if ci:
                    updates[i][mask] = ci
        theta = [t + Grassmann(q, u) for t, u in zip(theta, updates)]
    raise FactorizationError("point not in the big-cell product")


def _has_off_diagonal(g: SuperMatrix, mask: int) -> bool:
    m = g.m
    p = g.planes[mask]
    return bool(np.any(p[:m, m:]) or np.any(p[m:, :m]))


def _off_diagonal(plane: QMatrix, m: int) -> QMatrix:
    num = np.array(plane.num, copy=True)
    num[:m, :m] = 0
    num[m:, m:] = 0
    return QMatrix(num, plane.den)


# ---------------------------------------------------------------------------
# integrality


@dataclass
class StabilityReport:
    passed: bool
    violations: list = field(default_factory=list)  # (token index, monomial, row, col, value)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "violations": [{"token": t, "monomial": mono, "row": i, "col": j, "value": str(v)}
                               for t, mono, i, j, v in self.violations]}


def lattice_stability(w: GroupWord, V: RationalModule, M: IntegerLattice,
                      basis: ChevalleyBasis | None = None) -> StabilityReport:
    """Each generator matrix, written in the lattice basis, has integer Grassmann coefficients."""
    if not M.is_full_rank():
        raise ValueError("lattice must have full rank")
    P = QMatrix.from_rows(M.basis()).transpose()  # columns = lattice vectors
    Pinv = P.inverse()
    violations = []
    for t, tok in enumerate(w.tokens):
        G = token_matrix(V, tok, basis)
        for mask in G.nonzero_masks():
            local = Pinv @ G.plane(mask) @ P
            if local.den != 1:
                for i, row in enumerate(local.tolist()):
                    for j, v in enumerate(row):
                        if v.denominator != 1:
                            mono = [k + 1 for k in range(w.q) if mask >> k & 1]
                            violations.append((t, mono, i, j, v))
    return StabilityReport(not violations, violations)


# ---------------------------------------------------------------------------
# random words


def random_grassmann(rng: random.Random, q: int, parity: int, coeff: int = 2, density: float = 0.5) -> Grassmann:
    terms = {}
    for mask in range(1 << q):
        if popcount(mask) & 1 == parity and rng.random() < density:
            c = rng.randint(-coeff, coeff)
            if c:
                terms[mask] = c
    return Grassmann(q, terms)


def random_word(rd: RootDatum, q: int, length: int, seed: int | random.Random = 0,
                n_cartan: int | None = None, kinds: Sequence[str] = ("even", "odd", "torus")) -> GroupWord:
    """Seeded random word with small integer Grassmann parameters."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n_cartan = len(rd.cartan) if n_cartan is None else n_cartan
    toks = []
    for _ in range(length):
        kind = rng.choice(list(kinds))
        if kind == "even" and rd.even_roots:
            toks.append(EvenRoot(rng.choice(rd.even_roots), random_grassmann(rng, q, 0)))
        elif kind == "odd" and rd.odd_roots:
            toks.append(OddRoot(rng.choice(rd.odd_roots), random_grassmann(rng, q, 1)))
        else:
            soul = random_grassmann(rng, q, 0).soul()
            u = soul + rng.choice([1, -1, 2])
            toks.append(Torus(rng.randrange(n_cartan), u))
    return GroupWord(q, tuple(toks))


def random_invertible_supermatrix(rng: random.Random, m: int, n: int, q: int, coeff: int = 3) -> SuperMatrix:
    """Even supermatrix with unimodular-ish body blocks and random souls."""
    size = m + n
    par = mask_parity(q)
    planes = np.zeros((1 << q, size, size), dtype=np.int64)
    for blk in (slice(0, m), slice(m, size)):
        k = blk.stop - blk.start
        while True:
            body = np.array([[rng.randint(-coeff, coeff) for _ in range(k)] for _ in range(k)], dtype=np.int64)
            if k == 0 or round(np.linalg.det(body)) != 0:
                break
        planes[0, blk, blk] = body
    for mask in range(1, 1 << q):
        for i in range(size):
            for j in range(size):
                same = (i < m) == (j < m)
                if (par[mask] == 0) == same and rng.random() < 0.4:
                    planes[mask, i, j] = rng.randint(-coeff, coeff)
    return SuperMatrix(m, n, q, planes, 1, EVEN)


__all__ = [
    "EvenRoot",
    "OddRoot",
    "Torus",
    "GroupWord",
    "FactoredPoint",
    "FactorizationError",
    "AlmostSplit",
    "StabilityReport",
    "x_even",
    "x_odd",
    "torus_elem",
    "token_matrix",
    "evaluate_word",
    "even_projection",
    "gl_block_decompose",
    "almost_split_decompose",
    "odd_product",
    "recompose",
    "factor_point",
    "lattice_stability",
    "random_grassmann",
    "random_word",
    "random_invertible_supermatrix",
]
