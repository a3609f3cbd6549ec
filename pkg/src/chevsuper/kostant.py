"""Kostant Z-form generators acting on rational modules, and admissible lattices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .chevalley import ChevalleyBasis
from .lattice import IntegerLattice, in_lattice
from .liesuper import LieSuperalgebra
from .roots import Root
from .superarith import QMatrix


class NotRationalError(ValueError):
    pass


class ClosureError(RuntimeError):
    pass


@dataclass(frozen=True)
class RationalModule:
    """Finite-dimensional module given by one rational matrix per basis element.

    ``action`` may cover only part of the basis (e.g. the even part for a
    g₀-module).  Module basis vectors carry parities; matrices act on columns.
    """

    algebra: LieSuperalgebra = field(repr=False)
    action: dict = field(repr=False, compare=False)
    parities: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.parities)

    @property
    def parity_split(self) -> tuple[int, int]:
        odd = sum(self.parities)
        return self.dim - odd, odd

    @property
    def indices(self) -> list[int]:
        return sorted(self.action)

    def rho(self, x: Sequence) -> QMatrix:
        """Action of a coefficient vector over the algebra."""
        out = QMatrix.zeros(self.dim)
        for i, c in enumerate(x):
            if c:
                if i not in self.action:
                    raise KeyError(f"basis element {self.algebra.basis[i].name} does not act on this module")
                out = out + self.action[i].scale(c)
        return out

    def restrict(self, indices: Iterable[int]) -> "RationalModule":
        idx = set(indices)
        return RationalModule(self.algebra, {i: m for i, m in self.action.items() if i in idx}, self.parities)


def defining_module(g: LieSuperalgebra) -> RationalModule:
    """The matrix realization as an m|n module."""
    size = g.m + g.n
    parities = tuple(0 if i < g.m else 1 for i in range(size))
    return RationalModule(g, {b.id: b.realization for b in g.basis}, parities)


def adjoint_module(g: LieSuperalgebra, indices: Sequence[int] | None = None) -> RationalModule:
    """ad restricted to the span of ``indices`` (default: all of g), which must be a subalgebra."""
    idx = list(range(g.dim)) if indices is None else list(indices)
    pos = {k: a for a, k in enumerate(idx)}
    action = {}
    for i in idx:
        rows = [[Fraction(0)] * len(idx) for _ in idx]
        for j in idx:
            for k, c in g.bracket_table.get((i, j), ()):
                if k not in pos:
                    raise ValueError("indices do not span a subalgebra")
                rows[pos[k]][pos[j]] += c
        action[i] = QMatrix.from_rows(rows)
    return RationalModule(g, action, tuple(g.basis[i].parity for i in idx))


# ---------------------------------------------------------------------------
# generators


def _vector(alpha, basis: ChevalleyBasis | None) -> Sequence:
    if isinstance(alpha, Root):
        if basis is None:
            raise ValueError("a Chevalley basis is needed to act by a root")
        return basis.X(alpha)
    return alpha


def nilpotency_degree(mat: QMatrix, bound: int | None = None) -> int:
    """Smallest k with mat^k = 0."""
    bound = mat.shape[0] + 1 if bound is None else bound
    p = QMatrix.identity(mat.shape[0])
    for k in range(bound + 1):
        if p.is_zero():
            return k
        p = p @ mat
    raise ValueError("matrix is not nilpotent")


def divided_power_action(V: RationalModule, alpha, n: int, basis: ChevalleyBasis | None = None) -> QMatrix:
    """ρ(X_α)^n / n!."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = V.rho(_vector(alpha, basis))
    return (x ** n).scale(Fraction(1, math.factorial(n)))


def odd_vector_action(V: RationalModule, gamma, basis: ChevalleyBasis | None = None) -> QMatrix:
    return V.rho(_vector(gamma, basis))


def generalized_binomial(x: int, n: int) -> int:
    """C(x, n) = x(x-1)...(x-n+1)/n! for any integer x."""
    num = 1
    for k in range(n):
        num *= x - k
    return num // math.factorial(n)


def cartan_eigenvalues(V: RationalModule, h: Sequence) -> list[int]:
    mat = V.rho(h)
    if not mat.is_diagonal():
        raise NotRationalError("module not rational: Cartan element does not act diagonally")
    vals = mat.diagonal_entries()
    if any(v.denominator != 1 for v in vals):
        raise NotRationalError("module not rational: non-integral Cartan eigenvalue")
    return [int(v) for v in vals]


def cartan_binomial_action(V: RationalModule, i, n: int, basis: ChevalleyBasis | None = None) -> QMatrix:
    """diag(C(λ, n)) for the eigenvalues λ of H_i (``i`` an index into the basis or a vector)."""
    if isinstance(i, int):
        if basis is None:
            raise ValueError("a Chevalley basis is needed to select H_i")
        h = basis.cartan_elements[i]
    else:
        h = i
    return QMatrix.diagonal([generalized_binomial(v, n) for v in cartan_eigenvalues(V, h)])


@dataclass(frozen=True)
class KostantGenerator:
    label: str
    matrix: QMatrix = field(repr=False)


def kostant_generators(V: RationalModule, basis: ChevalleyBasis) -> list[KostantGenerator]:
    """Truncated generating set: divided powers below the nilpotency degree,
    odd root vectors, and Cartan binomials up to max|λ| + 1."""
    rd = basis.rd
    gens = []
    for r, x in zip(rd.roots, basis.root_vectors):
        if not any(i in V.action for i, c in enumerate(x) if c):
            continue
        mat = V.rho(x)
        if r.parity == 0:
            top = nilpotency_degree(mat)
            p = mat
            for n in range(1, top):
                gens.append(KostantGenerator(f"X{r.label()}^({n})", p.scale(Fraction(1, math.factorial(n)))))
                p = p @ mat
        else:
            gens.append(KostantGenerator(f"X{r.label()}", mat))
    for i, h in enumerate(basis.cartan_elements):
        vals = cartan_eigenvalues(V, h)
        top = max((abs(v) for v in vals), default=0) + 1
        for n in range(1, top + 1):
            gens.append(KostantGenerator(f"binom(H{i + 1},{n})", QMatrix.diagonal([generalized_binomial(v, n) for v in vals])))
    return gens


# ---------------------------------------------------------------------------
# admissibility


@dataclass
class AdmissibilityReport:
    passed: bool
    violations: list = field(default_factory=list)  # (generator label, lattice vector)
    generators_checked: int = 0

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "generators_checked": self.generators_checked,
            "violations": [{"generator": g, "vector": [str(x) for x in v]} for g, v in self.violations],
        }


def _images(gen: QMatrix, L: IntegerLattice) -> np.ndarray:
    """Rows (G b)·den·gen.den for the integer lattice rows b; caller divides by gen.den."""
    B = np.array(L.hnf, dtype=object)
    return (B @ np.asarray(gen.num, dtype=object).T)


def _stable_rows(gen: QMatrix, L: IntegerLattice) -> list[int]:
    """Indices of lattice basis vectors b with G b outside the lattice."""
    imgs = _images(gen, L)
    bad = []
    for k, row in enumerate(imgs):
        v = [Fraction(int(x), gen.den) for x in row]
        if not in_lattice(L.hnf, v):
            bad.append(k)
    return bad


def is_admissible(V: RationalModule, M: IntegerLattice, basis: ChevalleyBasis,
                  generators: Sequence[KostantGenerator] | None = None, first_only: bool = False) -> AdmissibilityReport:
    """Decide G·M ⊆ M for every truncated Kostant generator G (exact)."""
    gens = kostant_generators(V, basis) if generators is None else generators
    violations = []
    for gen in gens:
        for k in _stable_rows(gen.matrix, M):
            violations.append((gen.label, M.basis()[k]))
            if first_only:
                return AdmissibilityReport(False, violations, len(gens))
    if M.rank != V.dim:
        violations.append(("rank", [Fraction(M.rank)]))
    return AdmissibilityReport(not violations, violations, len(gens))


def generate_admissible(V: RationalModule, seed, basis: ChevalleyBasis, max_iterations: int = 64) -> IntegerLattice:
    """Smallest lattice containing ``seed`` and stable under the Kostant generators."""
    if isinstance(seed, IntegerLattice):
        L = seed
    else:
        L = IntegerLattice.from_generators(list(seed), V.dim)
    gens = kostant_generators(V, basis)
    for _ in range(max_iterations):
        vecs = L.basis()
        new = list(vecs)
        for gen in gens:
            for k in _stable_rows(gen.matrix, L):
                b = vecs[k]
                new.append([sum((gen.matrix[i, j] * b[j] for j in range(V.dim) if b[j]), Fraction(0)) for i in range(V.dim)])
        if len(new) == len(vecs):
            return L
        L = IntegerLattice.from_generators(new, V.dim)
    raise ClosureError("non-terminating closure")


__all__ = [
    "RationalModule",
    "NotRationalError",
    "ClosureError",
    "KostantGenerator",
    "AdmissibilityReport",
    "defining_module",
    "adjoint_module",
    "nilpotency_degree",
    "divided_power_action",
    "odd_vector_action",
    "cartan_binomial_action",
    "cartan_eigenvalues",
    "generalized_binomial",
    "kostant_generators",
    "is_admissible",
    "generate_admissible",
]
