"""g₀-modules and induced g-modules on Λ(g₁) ⊗ Ṽ."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .chevalley import ChevalleyBasis
from .kostant import NotRationalError, RationalModule, cartan_eigenvalues, defining_module
from .lattice import IntegerLattice
from .liesuper import LieSuperalgebra
from .qla import Coordinates, rank
from .roots import Root
from .superarith import QMatrix, supercommutator


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class EvenModule(RationalModule):
    """A module for the even part g₀; the action covers exactly the even basis."""

    def __post_init__(self):
        if sorted(self.action) != self.algebra.even_indices():
            raise ValueError("an even module must give an action for exactly the even basis elements")


def natural_even_module(g: LieSuperalgebra) -> EvenModule:
    """The defining m|n representation restricted to g₀."""
    d = defining_module(g)
    return EvenModule(g, {i: d.action[i] for i in g.even_indices()}, d.parities)


@dataclass
class RepresentationReport:
    passed: bool
    checked: int
    failure: dict | None = None

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "failure": self.failure}


def _parity_ok(mat: QMatrix, p: int, parities: Sequence[int]) -> bool:
    for i, pi in enumerate(parities):
        for j, pj in enumerate(parities):
            if (pi + pj) % 2 != p and mat.num[i, j]:
                return False
    return True


def verify_representation(V: RationalModule) -> RepresentationReport:
    """ρ([x,y]) = ρ(x)ρ(y) − (−1)^{|x||y|}ρ(y)ρ(x) on all pairs of acting basis elements."""
    g = V.algebra
    idx = V.indices
    checked = 0
    for i in idx:
        p = g.basis[i].parity
        if not _parity_ok(V.action[i], p, V.parities):
            return RepresentationReport(False, checked, {"reason": "action does not respect parity", "x": g.basis[i].name})
    for i in idx:
        for j in idx:
            checked += 1
            lhs = QMatrix.zeros(V.dim)
            for k, c in g.bracket_table.get((i, j), ()):
                if k not in V.action:
                    return RepresentationReport(False, checked, {"reason": "bracket leaves the acting subalgebra",
                                                                 "x": g.basis[i].name, "y": g.basis[j].name})
                lhs = lhs + V.action[k].scale(c)
            rhs = supercommutator(V.action[i], V.action[j], g.basis[i].parity, g.basis[j].parity)
            if lhs != rhs:
                return RepresentationReport(False, checked, {"reason": "bracket not preserved",
                                                             "x": g.basis[i].name, "y": g.basis[j].name})
    return RepresentationReport(True, checked)


def is_faithful(V: RationalModule) -> bool:
    """The acting basis elements have linearly independent matrices."""
    mats = [V.action[i].flat() for i in V.indices]
    return rank(mats) == len(mats)


# ---------------------------------------------------------------------------
# induction


@dataclass(frozen=True)
class InducedModule(RationalModule):
    chevalley: ChevalleyBasis = field(default=None, repr=False, compare=False)
    even_module: EvenModule = field(default=None, repr=False, compare=False)
    order: tuple[Root, ...] = ()
    pairs: tuple[tuple[tuple[int, ...], int], ...] = ()

    @property
    def N(self) -> int:
        return len(self.order)

    def position(self, S: Sequence[int], j: int) -> int:
        return self.pairs.index((tuple(S), j))

    def weight(self, S: Sequence[int], j: int, h: Sequence) -> Fraction:
        """Closed-form eigenvalue of a Cartan element on X_S ⊗ v_j."""
        rd = self.chevalley.rd
        lam = Fraction(self.even_module.rho(h)[j, j])
        return lam + sum((rd.evaluate(self.order[i], h) for i in S), Fraction(0))


def _pair_parity(S, j, parities) -> int:
    return (len(S) + parities[j]) % 2


def _canonical_pairs(N: int, parities: Sequence[int]) -> list:
    from itertools import combinations

    pairs = [(S, j) for k in range(N + 1) for S in combinations(range(N), k) for j in range(len(parities))]
    pairs.sort(key=lambda p: (_pair_parity(p[0], p[1], parities), len(p[0]), p[0], p[1]))
    return pairs


class _Straightener:
    """Rewrites y · X_S ⊗ v into normal-ordered monomials, memoized."""

    def __init__(self, g: LieSuperalgebra, odd_vectors: Sequence[Sequence], even_module: EvenModule):
        self.g = g
        self.y = [list(v) for v in odd_vectors]
        self.coords = Coordinates(self.y)
        self.V = even_module
        self.even = g.even_indices()
        from .liesuper import bracket

        self._bracket = bracket
        self.mul_odd = lru_cache(maxsize=None)(self._mul_odd)
        self.act_even_basis = lru_cache(maxsize=None)(self._act_even_basis)

    # helpers
    def odd_coords(self, x: Sequence) -> list[Fraction]:
        c = self.coords.coords(list(x))
        if c is None:
            raise RepresentationError("odd element outside the span of the odd root vectors")
        return c

    def act_even(self, z: Sequence, S: tuple, j: int) -> dict:
        out = defaultdict(Fraction)
        for i, c in enumerate(z):
            if c:
                if self.g.basis[i].parity:
                    raise RepresentationError("expected an even element")
                for key, v in self.act_even_basis(i, S, j).items():
                    out[key] += c * v
        return {k: v for k, v in out.items() if v}

    def act_odd(self, x: Sequence, S: tuple, j: int) -> dict:
        out = defaultdict(Fraction)
        for k, c in enumerate(self.odd_coords(x)):
            if c:
                for key, v in self.mul_odd(k, S, j).items():
                    out[key] += c * v
        return {k: v for k, v in out.items() if v}

    def _then_odd(self, k: int, terms: dict, scale: Fraction, out: defaultdict) -> None:
        for (T, jj), c in terms.items():
            for key, v in self.mul_odd(k, T, jj).items():
                out[key] += scale * c * v

    # rewriting rules
    def _mul_odd(self, k: int, S: tuple, j: int) -> dict:
        if not S:
            return {((k,), j): Fraction(1)}
        s, R = S[0], S[1:]
        if k < s:
            return {((k,) + S, j): Fraction(1)}
        if k == s:
            z = self._bracket(self.g, self.y[k], self.y[k])
            return {key: v / 2 for key, v in self.act_even(z, R, j).items()}
        # y_k y_s = [y_k, y_s] - y_s y_k
        out = defaultdict(Fraction)
        z = self._bracket(self.g, self.y[k], self.y[s])
        for key, v in self.act_even(z, R, j).items():
            out[key] += v
        self._then_odd(s, self.mul_odd(k, R, j), Fraction(-1), out)
        return {kk: v for kk, v in out.items() if v}

    def _act_even_basis(self, i: int, S: tuple, j: int) -> dict:
        if not S:
            col = self.V.action[i]
            return {((), jj): col[jj, j] for jj in range(self.V.dim) if col.num[jj, j]}
        s, R = S[0], S[1:]
        # z y_s = [z, y_s] + y_s z
        unit = self.g.unit(i)
        out = defaultdict(Fraction)
        w = self._bracket(self.g, unit, self.y[s])
        if any(w):
            for key, v in self.act_odd(w, R, j).items():
                out[key] += v
        self._then_odd(s, self.act_even_basis(i, R, j), Fraction(1), out)
        return {kk: v for kk, v in out.items() if v}


def induce(g: LieSuperalgebra, basis: ChevalleyBasis, Vt: EvenModule, order: Sequence[Root] | None = None) -> InducedModule:
    """U(g) ⊗_{U(g₀)} Ṽ on the monomial basis X_{γ_S} ⊗ v_j by PBW straightening."""
    rep = verify_representation(Vt)
    if not rep:
        raise RepresentationError(f"even module is not a representation: {rep.failure}")
    rd = basis.rd
    order = tuple(rd.odd_order() if order is None else order)
    if sorted(order) != sorted(rd.odd_roots):
        raise ValueError("order must list every odd root exactly once")
    st = _Straightener(g, [basis.X(r) for r in order], Vt)
    pairs = _canonical_pairs(len(order), Vt.parities)
    pos = {p: a for a, p in enumerate(pairs)}
    parities = tuple(_pair_parity(S, j, Vt.parities) for S, j in pairs)
    action = {}
    for b in g.basis:
        rows = [[Fraction(0)] * len(pairs) for _ in pairs]
        for col, (S, j) in enumerate(pairs):
            res = st.act_odd(g.unit(b.id), S, j) if b.parity else st.act_even_basis(b.id, S, j)
            for key, v in res.items():
                rows[pos[key]][col] += v
        action[b.id] = QMatrix.from_rows(rows)
    return InducedModule(g, action, parities, basis, Vt, order, tuple(pairs))


def check_cartan_closed_form(V: InducedModule) -> bool:
    """Straightened Cartan action agrees with λ_v + Σ_{i∈S} γ_i(H) on every monomial."""
    for h in V.chevalley.cartan_elements:
        mat = V.rho(h)
        if not mat.is_diagonal():
            return False
        for a, (S, j) in enumerate(V.pairs):
            if mat[a, a] != V.weight(S, j, h):
                return False
    return True


def is_rational(V: RationalModule, basis: ChevalleyBasis) -> bool:
    try:
        for h in basis.cartan_elements:
            cartan_eigenvalues(V, h)
    except NotRationalError:
        return False
    return True


def induced_lattice(V: InducedModule, Mt: IntegerLattice) -> IntegerLattice:
    """Span of X_S ⊗ m for m in a basis of the lattice M̃ ⊂ Ṽ."""
    if Mt.dim != V.even_module.dim:
        raise ValueError("lattice dimension does not match the even module")
    gens = []
    subsets = sorted({S for S, _ in V.pairs}, key=lambda S: (len(S), S))
    for S in subsets:
        for m in Mt.basis():
            v = [Fraction(0)] * V.dim
            for j, c in enumerate(m):
                if c:
                    v[V.position(S, j)] = c
            gens.append(v)
    return IntegerLattice.from_generators(gens, V.dim)


__all__ = [
    "EvenModule",
    "InducedModule",
    "RepresentationError",
    "RepresentationReport",
    "natural_even_module",
    "verify_representation",
    "is_faithful",
    "induce",
    "check_cartan_closed_form",
    "is_rational",
    "induced_lattice",
]
