"""Root-space decomposition, positive systems, root strings and coroots."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .liesuper import BilinearFormTable, LieSuperalgebra, bracket, form_table
from .qla import solve


class WeightError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Root:
    """A root as its values on the chosen Cartan basis, with its parity."""

    coords: tuple[Fraction, ...]
    parity: int

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords), self.parity)

    def __add__(self, other: "Root") -> tuple[Fraction, ...]:
        return tuple(a + b for a, b in zip(self.coords, other.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def pairing(self, functional: Sequence) -> Fraction:
        return sum((Fraction(f) * c for f, c in zip(functional, self.coords)), Fraction(0))

    def label(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")" + ("₁" if self.parity else "₀")


@dataclass(frozen=True)
class RootDatum:
    algebra: LieSuperalgebra = field(repr=False)
    cartan: tuple[int, ...]
    roots: tuple[Root, ...]
    root_vectors: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    functional: tuple[Fraction, ...] | None = None
    positive: tuple[bool, ...] | None = None

    # lookups
    def index(self, alpha: Root | Sequence) -> int:
        coords = alpha.coords if isinstance(alpha, Root) else tuple(Fraction(c) for c in alpha)
        for i, r in enumerate(self.roots):
            if r.coords == coords:
                return i
        raise KeyError(f"{coords} is not a root")

    def find(self, coords: Sequence) -> Root | None:
        coords = tuple(Fraction(c) for c in coords)
        for r in self.roots:
            if r.coords == coords:
                return r
        return None

    def is_root(self, coords: Sequence) -> bool:
        return self.find(coords) is not None

    def vector(self, alpha: Root) -> tuple[Fraction, ...]:
        return self.root_vectors[self.index(alpha)]

    @property
    def even_roots(self) -> list[Root]:
        return [r for r in self.roots if r.parity == 0]

    @property
    def odd_roots(self) -> list[Root]:
        return [r for r in self.roots if r.parity == 1]

    def _signed(self, parity: int, sign: bool) -> tuple[int, ...]:
        if self.positive is None:
            raise ValueError("no positive system chosen")
        return tuple(i for i, r in enumerate(self.roots) if r.parity == parity and self.positive[i] == sign)

    @property
    def positive_even(self):
        return self._signed(0, True)

    @property
    def positive_odd(self):
        return self._signed(1, True)

    @property
    def negative_even(self):
        return self._signed(0, False)

    @property
    def negative_odd(self):
        return self._signed(1, False)

    def is_positive(self, alpha: Root) -> bool:
        if self.positive is None:
            raise ValueError("no positive system chosen")
        return self.positive[self.index(alpha)]

    def sigma(self, alpha: Root) -> int:
        """-1 on negative odd roots, +1 otherwise."""
        return -1 if alpha.parity == 1 and not self.is_positive(alpha) else 1

    def odd_order(self) -> list[Root]:
        """Negative odd roots, then positive odd roots, each sorted by coordinates."""
        neg = sorted(self.roots[i] for i in self.negative_odd)
        pos = sorted(self.roots[i] for i in self.positive_odd)
        return neg + pos

    def evaluate(self, alpha: Root, h: Sequence) -> Fraction:
        """α(h) for a Cartan element given as a coefficient vector over the algebra."""
        return sum((Fraction(h[k]) * c for k, c in zip(self.cartan, alpha.coords)), Fraction(0))

    def with_root_vectors(self, vectors: Sequence[Sequence]) -> "RootDatum":
        return replace(self, root_vectors=tuple(tuple(Fraction(x) for x in v) for v in vectors))


# ---------------------------------------------------------------------------


def root_decomposition(g: LieSuperalgebra, cartan: Sequence[int] | None = None) -> RootDatum:
    """Group the basis by joint ad-eigenvalues of the chosen Cartan elements."""
    cartan = tuple(g.cartan if cartan is None else cartan)
    units = [g.unit(i) for i in range(g.dim)]
    roots, vectors = [], []
    for i in range(g.dim):
        vals = []
        for h in cartan:
            br = bracket(g, units[h], units[i])
            lam = br[i]
            if any(c for k, c in enumerate(br) if k != i):
                raise WeightError(f"basis not weight-adapted: ad({g.basis[h].name}) moves {g.basis[i].name}")
            vals.append(lam)
        coords = tuple(vals)
        if i in cartan:
            if any(coords):
                raise WeightError(f"Cartan element {g.basis[i].name} has a nonzero weight")
            continue
        if not any(coords):
            raise WeightError(f"basis not weight-adapted: {g.basis[i].name} has weight zero outside the Cartan")
        root = Root(coords, g.basis[i].parity)
        if any(r.coords == coords for r in roots):
            raise WeightError(f"root space of {coords} is not one-dimensional")
        roots.append(root)
        vectors.append(tuple(units[i]))
    return RootDatum(g, cartan, tuple(roots), tuple(vectors))


def default_functional(g: LieSuperalgebra, cartan: Sequence[int] | None = None) -> tuple[Fraction, ...]:
    """Coefficients of a generic Cartan element used to split Δ.

    gl/sl: the element acting like diag(K, K-1, ..., 1), K = m + n.
    osp: (ℓ, ℓ-1, ..., 1) on the diagonal Cartan basis.
    """
    cartan = tuple(g.cartan if cartan is None else cartan)
    size = g.m + g.n
    if g.family in ("gl", "sl"):
        diag = [Fraction(size - i) for i in range(size)]
        if g.family == "sl":
            st = sum(diag[: g.m]) - sum(diag[g.m:])
            c = st / (g.m - g.n)
            diag = [d - c for d in diag]
        rows = [[g.basis[h].realization[i, i] for h in cartan] for i in range(size)]
        sol = solve(rows, diag)
        if sol is None:
            raise ValueError("cannot express the default functional on this Cartan basis")
        return tuple(sol)
    ell = len(cartan)
    return tuple(Fraction(ell - k) for k in range(ell))


def positive_system(rd: RootDatum, functional: Sequence | None = None) -> RootDatum:
    """α is positive iff α(D) > 0 for the Cartan element D with the given coefficients."""
    f = tuple(Fraction(x) for x in (default_functional(rd.algebra, rd.cartan) if functional is None else functional))
    if len(f) != len(rd.cartan):
        raise ValueError(f"functional needs {len(rd.cartan)} entries")
    signs = []
    for r in rd.roots:
        v = r.pairing(f)
        if v == 0:
            raise ValueError(f"degenerate functional: vanishes on root {r.label()}")
        signs.append(v > 0)
    return replace(rd, functional=f, positive=tuple(signs))


ZERO_TERMINAL = "zero-terminal"
ROOTS_ONLY = "roots-only"


def root_string(rd: RootDatum, alpha: Root, beta: Root, convention: str = ZERO_TERMINAL) -> tuple[int, int]:
    """(r, q): lengths of the downward and upward legs of the α-string through β.

    r = max k with β - jα a string member for all 1 <= j <= k, and q likewise
    for β + jα.  With ``roots-only`` members must be roots.  With the default
    ``zero-terminal`` convention 0 also counts as a member but ends the leg,
    so the α-string through α has r = 1.
    """
    if convention not in (ZERO_TERMINAL, ROOTS_ONLY):
        raise ValueError(f"unknown convention {convention!r}")
    if not rd.is_root(alpha.coords):
        raise KeyError("α is not a root")

    def leg(sign: int) -> int:
        k = 0
        while True:
            coords = tuple(b + sign * (k + 1) * a for a, b in zip(alpha.coords, beta.coords))
            if not any(coords):
                return k + 1 if convention == ZERO_TERMINAL else k
            if not rd.is_root(coords):
                return k
            k += 1

    return leg(-1), leg(1)


# ---------------------------------------------------------------------------
# coroots


def cartan_gram(rd: RootDatum, form: BilinearFormTable) -> list[list[Fraction]]:
    return [[form.gram[a][b] for b in rd.cartan] for a in rd.cartan]


def dual_element(rd: RootDatum, alpha: Root, form: BilinearFormTable) -> list[Fraction]:
    """H'_α: (H'_α, H) = α(H) for all Cartan H, as a coefficient vector over g."""
    gram = cartan_gram(rd, form)
    sol = solve(gram, list(alpha.coords))
    if sol is None or _rank_deficient(gram):
        raise ValueError("cannot identify h with h*: form degenerate on the Cartan subalgebra")
    out = [Fraction(0)] * rd.algebra.dim
    for k, c in zip(rd.cartan, sol):
        out[k] = c
    return out


def _rank_deficient(gram) -> bool:
    from .qla import rank

    return rank(gram) < len(gram)


def root_pairing(rd: RootDatum, alpha: Root, beta: Root, form: BilinearFormTable) -> Fraction:
    """(α, β) = (H'_α, H'_β) = β(H'_α)."""
    return rd.evaluate(beta, dual_element(rd, alpha, form))


def is_isotropic(rd: RootDatum, alpha: Root, form: BilinearFormTable) -> bool:
    return root_pairing(rd, alpha, alpha, form) == 0


def coroot(rd: RootDatum, alpha: Root, form: BilinearFormTable | None = None,
           root_vectors: Sequence[Sequence] | None = None) -> list[Fraction]:
    """Coroot H_α as a coefficient vector over the algebra.

    Non-isotropic even α: 2H'_α/(α,α).  Non-isotropic odd α (2α is then an
    even root): H'_α/(α,α), the coroot of 2α.  Isotropic α: σ_α [X_α, X_{-α}]
    for the given (default: the datum's) root vectors.
    """
    g = rd.algebra
    form = form_table(g) if form is None else form
    if not rd.is_root(alpha.coords):
        raise KeyError("α is not a root")
    h_prime = dual_element(rd, alpha, form)
    aa = rd.evaluate(alpha, h_prime)
    if aa != 0:
        scale = (1 if alpha.parity else 2) / aa
        return [c * scale for c in h_prime]
    vecs = rd.root_vectors if root_vectors is None else root_vectors
    neg = rd.find(tuple(-c for c in alpha.coords))
    if neg is None:
        raise ValueError("isotropic root without a negative")
    x, y = vecs[rd.index(alpha)], vecs[rd.index(neg)]
    return [rd.sigma(alpha) * c for c in bracket(g, x, y)]


def coroots(rd: RootDatum, form: BilinearFormTable | None = None,
            root_vectors: Sequence[Sequence] | None = None) -> dict[Root, list[Fraction]]:
    form = form_table(rd.algebra) if form is None else form
    return {r: coroot(rd, r, form, root_vectors) for r in rd.roots}


def analyze(g: LieSuperalgebra, functional: Sequence | None = None) -> RootDatum:
    """Root decomposition on the algebra's Cartan plus a positive system."""
    return positive_system(root_decomposition(g), functional)
