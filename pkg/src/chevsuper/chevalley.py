"""Chevalley bases: construction from matrix realizations and exact axiom checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lattice import IntegerLattice, hermite_normal_form, is_saturated, lattice_coordinates
from .liesuper import BilinearFormTable, LieSuperalgebra, UnsupportedFamilyError, bracket, form_table
from .qla import Coordinates, rank
from .roots import ROOTS_ONLY, ZERO_TERMINAL, Root, RootDatum, coroot, is_isotropic, root_string


@dataclass(frozen=True)
class ChevalleyBasis:
    rd: RootDatum = field(repr=False)
    cartan_elements: tuple[tuple[Fraction, ...], ...]
    root_vectors: tuple[tuple[Fraction, ...], ...]  # aligned with rd.roots

    @property
    def algebra(self) -> LieSuperalgebra:
        return self.rd.algebra

    def X(self, alpha: Root) -> tuple[Fraction, ...]:
        return self.root_vectors[self.rd.index(alpha)]

    def sigma(self, alpha: Root) -> int:
        return self.rd.sigma(alpha)

    def elements(self) -> list[tuple[Fraction, ...]]:
        return list(self.cartan_elements) + list(self.root_vectors)

    def coroot(self, alpha: Root, form: BilinearFormTable | None = None) -> list[Fraction]:
        return coroot(self.rd, alpha, form, self.root_vectors)

    def with_root_vector(self, alpha: Root, vector: Sequence) -> "ChevalleyBasis":
        vecs = list(self.root_vectors)
        vecs[self.rd.index(alpha)] = tuple(Fraction(x) for x in vector)
        return ChevalleyBasis(self.rd, self.cartan_elements, tuple(vecs))


@dataclass
class ChevalleyReport:
    axiom_a: bool
    axiom_b: bool
    axiom_c: bool
    axiom_d: bool
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.axiom_a and self.axiom_b and self.axiom_c and self.axiom_d

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "axiom_a": self.axiom_a,
            "axiom_b": self.axiom_b,
            "axiom_c": self.axiom_c,
            "axiom_d": self.axiom_d,
            "passed": self.passed,
            "failures": sorted(self.failures, key=lambda f: (f["axiom"], str(f))),
            "details": self.details,
        }


@dataclass
class StructureConstantTable:
    c: dict  # (α, β) -> int
    cartan_values: dict  # (i, α) -> int


def _neg(alpha: Root) -> tuple:
    return tuple(-c for c in alpha.coords)


def _scale(v, s):
    return tuple(s * x for x in v)


def _is_multiple(v: Sequence, w: Sequence) -> Fraction | None:
    """c with v = c w, or None."""
    c = None
    for a, b in zip(v, w):
        if b == 0:
            if a != 0:
                return None
            continue
        t = Fraction(a) / b
        if c is None:
            c = t
        elif c != t:
            return None
    return Fraction(0) if c is None else c


# ---------------------------------------------------------------------------


def _cartan_coords(basis: ChevalleyBasis, h: Sequence) -> list[Fraction] | None:
    coords = Coordinates([list(x) for x in basis.cartan_elements])
    return coords.coords(list(h))


def verify_chevalley(basis: ChevalleyBasis, rd: RootDatum | None = None,
                     form: BilinearFormTable | None = None) -> ChevalleyReport:
    """Check conditions (a)-(d) exactly, listing every violation found.

    (a) H_1..H_ℓ form a basis of h and Span_Z{H_i} = Span_Z{H_α}.  When the
        coroots do not span h (gl has a centre) equality is impossible; the
        check is then that every coroot is an integral combination of the H_i
        and that the coroot lattice is saturated in Span_Z{H_i}, which reduces
        to equality when the coroots have full rank.
    """
    rd = basis.rd if rd is None else rd
    g = rd.algebra
    form = form_table(g) if form is None else form
    failures: list[dict] = []
    details: dict = {}
    X = basis.root_vectors
    roots = rd.roots
    H = [list(h) for h in basis.cartan_elements]
    ell = len(rd.cartan)

    # coroots with this basis's root vectors
    cor = {r: coroot(rd, r, form, X) for r in roots}

    # ---- (a)
    ok_a = True
    in_h = all(all(c == 0 for k, c in enumerate(h) if k not in rd.cartan) for h in H)
    if len(H) != ell or rank(H) != ell or not in_h:
        ok_a = False
        failures.append({"axiom": "a", "reason": "Cartan elements are not a basis of h"})
    else:
        cc = [_cartan_coords(basis, cor[r]) for r in roots]
        non_integral = [r for r, c in zip(roots, cc) if c is None or any(x.denominator != 1 for x in c)]
        for r in non_integral:
            failures.append({"axiom": "a", "reason": "coroot not in Span_Z{H_i}", "root": r.label()})
        if non_integral:
            ok_a = False
        else:
            ints = [[int(x) for x in c] for c in cc]
            hnf = hermite_normal_form(ints, ell)
            crank = len(hnf)
            details["coroot_rank"] = crank
            details["cartan_rank"] = ell
            if crank == ell:
                literal = hnf == [[int(i == j) for j in range(ell)] for i in range(ell)]
                details["axiom_a_literal"] = literal
                if not literal:
                    ok_a = False
                    failures.append({"axiom": "a", "reason": "Span_Z{H_alpha} is a proper sublattice", "hnf": hnf})
            else:
                details["axiom_a_literal"] = False
                if not is_saturated(hnf):
                    ok_a = False
                    fail = {"axiom": "a", "reason": "coroot lattice not saturated in h_Z", "hnf": hnf}
                    imprimitive = [r.label() for r, c in zip(roots, ints) if math.gcd(*c) > 1]
                    if imprimitive:
                        fail["root"] = imprimitive[0]
                        fail["roots"] = imprimitive
                    failures.append(fail)

    # ---- (b)
    ok_b = True
    for i, hi in enumerate(H):
        for j, hj in enumerate(H):
            if any(bracket(g, hi, hj)):
                ok_b = False
                failures.append({"axiom": "b", "reason": "[H_i, H_j] != 0", "pair": [i, j]})
    for i, hi in enumerate(H):
        for r, x in zip(roots, X):
            val = rd.evaluate(r, hi)
            br = bracket(g, hi, x)
            if list(br) != [val * c for c in x]:
                ok_b = False
                failures.append({"axiom": "b", "reason": "[H_i, X_alpha] != alpha(H_i) X_alpha", "i": i, "root": r.label()})
            elif val.denominator != 1:
                ok_b = False
                failures.append({"axiom": "b", "reason": "alpha(H_i) not an integer", "i": i, "root": r.label()})

    # ---- (c)
    ok_c = True
    iso = {r: is_isotropic(rd, r, form) for r in roots}
    for r, x in zip(roots, X):
        neg = rd.find(_neg(r))
        if neg is None:
            continue
        br = bracket(g, x, X[rd.index(neg)])
        target = [rd.sigma(r) * c for c in cor[r]]
        if list(br) != target:
            ok_c = False
            failures.append({"axiom": "c", "reason": "[X_alpha, X_-alpha] != sigma_alpha H_alpha", "root": r.label()})
        if iso[r]:
            # as for ordinary coroots, H_alpha must be a positive multiple of H'_alpha
            from .roots import dual_element

            mult = _is_multiple(cor[r], dual_element(rd, r, form))
            if not any(cor[r]) or mult is None or mult <= 0:
                ok_c = False
                failures.append({"axiom": "c", "reason": "isotropic coroot not a positive multiple of H'_alpha", "root": r.label()})
        for b in roots:
            if rd.evaluate(b, cor[r]).denominator != 1:
                ok_c = False
                failures.append({"axiom": "c", "reason": "beta(H_alpha) not an integer", "root": r.label(), "beta": b.label()})

    # ---- (d)
    ok_d = True
    alt_failures = []
    for a, xa in zip(roots, X):
        for b, xb in zip(roots, X):
            s = a + b
            if not any(s):
                continue
            br = bracket(g, xa, xb)
            target = rd.find(s)
            if target is None:
                if any(br):
                    ok_d = False
                    failures.append({"axiom": "d", "reason": "[X_alpha, X_beta] != 0 with alpha+beta not a root", "pair": [a.label(), b.label()]})
                continue
            c = _is_multiple(br, X[rd.index(target)])
            if c is None or c.denominator != 1:
                ok_d = False
                failures.append({"axiom": "d", "reason": "[X_alpha, X_beta] not an integral multiple of X_alpha+beta", "pair": [a.label(), b.label()]})
                continue
            if iso[a] and iso[b]:
                want = rd.evaluate(b, cor[a])
                if c != want:
                    ok_d = False
                    failures.append({"axiom": "d", "reason": "isotropic rule c = beta(H_alpha) violated", "pair": [a.label(), b.label()], "c": str(c), "beta(H_alpha)": str(want)})
            else:
                r_adopted, _ = root_string(rd, a, b, ZERO_TERMINAL)
                r_alt, _ = root_string(rd, a, b, ROOTS_ONLY)
                if abs(c) != r_adopted + 1:
                    ok_d = False
                    failures.append({"axiom": "d", "reason": "|c| != r + 1", "pair": [a.label(), b.label()], "c": str(c),
                                     "r": {ZERO_TERMINAL: r_adopted, ROOTS_ONLY: r_alt}})
                if abs(c) != r_alt + 1:
                    alt_failures.append([a.label(), b.label()])
    if not ok_d:
        details["string_conventions"] = {ZERO_TERMINAL: "failed", ROOTS_ONLY: "failed" if alt_failures else "passed"}
    details["roots_only_convention_mismatches"] = len(alt_failures)
    return ChevalleyReport(ok_a, ok_b, ok_c, ok_d, failures, details)


# ---------------------------------------------------------------------------


def _gf2_solve(rows: list[tuple[int, ...]], rhs: list[int], nvars: int) -> list[int] | None:
    """Solve a linear system over GF(2) given rows as bitmasks."""
    eqs = [(sum(1 << v for v in r), b) for r, b in zip(rows, rhs)]
    pivots = {}
    for mask, b in eqs:
        for v, (pm, pb) in pivots.items():
            if mask >> v & 1:
                mask ^= pm
                b ^= pb
        if mask == 0:
            if b:
                return None
            continue
        v = (mask & -mask).bit_length() - 1
        for u, (pm, pb) in list(pivots.items()):
            if pm >> v & 1:
                pivots[u] = (pm ^ mask, pb ^ b)
        pivots[v] = (mask, b)
    sol = [0] * nvars
    for v, (mask, b) in pivots.items():
        sol[v] = b  # free variables set to 0
    return sol


def normalize_signs(basis: ChevalleyBasis, form: BilinearFormTable | None = None) -> ChevalleyBasis:
    """Flip root-vector signs so that the sign-sensitive conditions hold.

    Condition (c), including the orientation of isotropic coroots, and the
    isotropic rule in (d) are linear in the sign flips over GF(2); the system is solved and applied.
    Magnitudes are untouched, so a basis with wrong scalings stays wrong.
    """
    rd = basis.rd
    g = rd.algebra
    form = form_table(g) if form is None else form
    X = basis.root_vectors
    roots = rd.roots
    idx = {r: i for i, r in enumerate(roots)}
    iso = {r: is_isotropic(rd, r, form) for r in roots}
    cor = {r: coroot(rd, r, form, X) for r in roots}
    from .roots import dual_element

    rows, rhs = [], []
    for r in roots:
        neg = rd.find(_neg(r))
        if neg is None:
            continue
        if iso[r]:
            # H_alpha = sigma [X_alpha, X_-alpha] flips with s_alpha s_-alpha
            mult = _is_multiple(cor[r], dual_element(rd, r, form))
            if mult:
                rows.append((idx[r], idx[neg]))
                rhs.append(int(mult < 0))
            continue
        br = bracket(g, X[idx[r]], X[idx[neg]])
        k = _is_multiple(br, [rd.sigma(r) * c for c in cor[r]])
        if k in (1, -1):
            rows.append((idx[r], idx[neg]))
            rhs.append(int(k == -1))
    for a in roots:
        for b in roots:
            s = a + b
            if not any(s) or not (iso[a] and iso[b]):
                continue
            t = rd.find(s)
            if t is None:
                continue
            c = _is_multiple(bracket(g, X[idx[a]], X[idx[b]]), X[idx[t]])
            want = rd.evaluate(b, cor[a])
            if c is None or c == 0 or abs(c) != abs(want):
                continue
            # c ~ s_a s_b s_t ; want ~ s_a s_{-a}
            neg_a = rd.find(_neg(a))
            rows.append(tuple({idx[b]} ^ {idx[t]} ^ {idx[neg_a]}))
            rhs.append(int((c > 0) != (want > 0)))
    sol = _gf2_solve(rows, rhs, len(roots))
    if sol is None:
        return basis
    vecs = tuple(_scale(v, -1) if s else v for v, s in zip(X, sol))
    return ChevalleyBasis(rd, basis.cartan_elements, vecs)


def propose_basis(g: LieSuperalgebra, rd: RootDatum, form: BilinearFormTable | None = None) -> ChevalleyBasis:
    """Standard Chevalley basis candidate from the matrix realization.

    Cartan elements: E_ii for gl, the integral basis h_i for sl, and for osp the
    diagonal basis H_k unless the coroot lattice differs from it, in which case
    its HNF basis.  Root vectors: the primitive integral realization vectors,
    with signs normalized only if the natural choice fails a sign condition.
    Failing that, X_{-α} is rescaled against its coroot, and as a last resort
    all magnitudes are solved for jointly.  If nothing verifies, the natural
    candidate is returned so that ``verify_chevalley`` can explain why.
    """
    if g.family not in ("gl", "sl", "osp"):
        raise UnsupportedFamilyError(f"unsupported family: {g.family}")
    form = form_table(g) if form is None else form
    cartan = [tuple(g.unit(k)) for k in rd.cartan]
    if g.family == "osp":
        cor = [coroot(rd, r, form) for r in rd.roots]
        ints = [[int(c[k]) for k in rd.cartan] for c in cor]
        if all(c[k].denominator == 1 for c in cor for k in rd.cartan):
            hnf = hermite_normal_form(ints, len(rd.cartan))
            if len(hnf) == len(rd.cartan) and hnf != [[int(i == j) for j in range(len(hnf))] for i in range(len(hnf))]:
                cartan = []
                for row in hnf:
                    v = [Fraction(0)] * g.dim
                    for k, c in zip(rd.cartan, row):
                        v[k] = Fraction(c)
                    cartan.append(tuple(v))
    basis = ChevalleyBasis(rd, tuple(cartan), tuple(tuple(v) for v in rd.root_vectors))
    report = verify_chevalley(basis, rd, form)
    sign_axioms = {f["axiom"] for f in report.failures}
    if report.passed or not sign_axioms <= {"c", "d"}:
        return basis
    fixed = normalize_signs(basis, form)
    if verify_chevalley(fixed, rd, form).passed:
        return fixed
    rescaled = normalize_signs(rescale_negatives(basis, form), form)
    if verify_chevalley(rescaled, rd, form).passed:
        return rescaled
    balanced = rescale_magnitudes(basis, form)
    if balanced is not None:
        balanced = normalize_signs(balanced, form)
        if verify_chevalley(balanced, rd, form).passed:
            return balanced
    return basis


def rescale_negatives(basis: ChevalleyBasis, form: BilinearFormTable | None = None) -> ChevalleyBasis:
    """Rescale X_{-α} (α positive, non-isotropic) so that [X_α, X_{-α}] = σ_α H_α."""
    rd = basis.rd
    g = rd.algebra
    form = form_table(g) if form is None else form
    vecs = list(basis.root_vectors)
    for r in rd.roots:
        if not rd.is_positive(r) or is_isotropic(rd, r, form):
            continue
        j = rd.index(_neg(r))
        br = bracket(g, vecs[rd.index(r)], vecs[j])
        k = _is_multiple(br, [rd.sigma(r) * c for c in coroot(rd, r, form)])
        if k:
            vecs[j] = _scale(vecs[j], 1 / k)
    return ChevalleyBasis(rd, basis.cartan_elements, tuple(vecs))


def _prime_exponents(x: Fraction) -> dict[int, int]:
    out: dict[int, int] = {}
    for n, sgn in ((x.numerator, 1), (x.denominator, -1)):
        n, p = abs(n), 2
        while n > 1:
            while n % p == 0:
                out[p] = out.get(p, 0) + sgn
                n //= p
            p += 1
    return out


def rescale_magnitudes(basis: ChevalleyBasis, form: BilinearFormTable | None = None) -> ChevalleyBasis | None:
    """Positive rescaling X_α -> s_α X_α fixing every magnitude condition at once.

    Each condition reads Π s^e = ratio; taking p-adic valuations gives one
    rational linear system per prime.  Returns None if some system has no
    integral solution or a needed bracket is not a multiple of its target.
    """
    rd = basis.rd
    g = rd.algebra
    form = form_table(g) if form is None else form
    X = basis.root_vectors
    roots = rd.roots
    idx = {r: i for i, r in enumerate(roots)}
    iso = {r: is_isotropic(rd, r, form) for r in roots}
    cor = {r: coroot(rd, r, form, X) for r in roots}
    eqs: list[tuple[dict, Fraction]] = []
    for r in roots:
        neg = rd.find(_neg(r))
        if neg is None or iso[r]:
            continue
        k = _is_multiple(bracket(g, X[idx[r]], X[idx[neg]]), [rd.sigma(r) * c for c in cor[r]])
        if not k:
            return None
        eqs.append(({idx[r]: 1, idx[neg]: 1}, 1 / abs(k)))
    for a in roots:
        for b in roots:
            s = a + b
            t = rd.find(s) if any(s) else None
            if t is None:
                continue
            c = _is_multiple(bracket(g, X[idx[a]], X[idx[b]]), X[idx[t]])
            if not c:
                return None
            if iso[a] and iso[b]:
                want = rd.evaluate(b, cor[a])
                if not want:
                    return None
                neg_a = idx[rd.find(_neg(a))]
                e: dict = {}
                for v, w in ((idx[b], 1), (idx[t], -1), (neg_a, -1)):
                    e[v] = e.get(v, 0) + w
                eqs.append((e, abs(want / c)))
            else:
                r_len, _ = root_string(rd, a, b, ZERO_TERMINAL)
                e = {}
                for v, w in ((idx[a], 1), (idx[b], 1), (idx[t], -1)):
                    e[v] = e.get(v, 0) + w
                eqs.append((e, Fraction(r_len + 1) / abs(c)))
    from .qla import solve

    n = len(roots)
    A = [[e.get(v, 0) for v in range(n)] for e, _ in eqs]
    vals = [_prime_exponents(Fraction(ratio)) for _, ratio in eqs]
    scale = [Fraction(1)] * n
    for p in sorted({p for v in vals for p in v}):
        x = solve(A, [v.get(p, 0) for v in vals])
        if x is None or any(xi.denominator != 1 for xi in x):
            return None
        for i, xi in enumerate(x):
            scale[i] *= Fraction(p) ** int(xi)
    vecs = tuple(_scale(v, c) for v, c in zip(X, scale))
    return ChevalleyBasis(rd, basis.cartan_elements, vecs)


def structure_constants(basis: ChevalleyBasis) -> StructureConstantTable:
    rd = basis.rd
    g = rd.algebra
    X = basis.root_vectors
    table = {}
    for a, xa in zip(rd.roots, X):
        for b, xb in zip(rd.roots, X):
            s = a + b
            if not any(s):
                continue
            t = rd.find(s)
            if t is None:
                table[(a, b)] = 0
                continue
            c = _is_multiple(bracket(g, xa, xb), X[rd.index(t)])
            if c is None or c.denominator != 1:
                raise ValueError(f"structure constant for {a.label()}, {b.label()} is not an integer")
            table[(a, b)] = int(c)
    vals = {}
    for i, h in enumerate(basis.cartan_elements):
        for r in rd.roots:
            v = rd.evaluate(r, h)
            if v.denominator != 1:
                raise ValueError("non-integral root value on a Cartan element")
            vals[(i, r)] = int(v)
    return StructureConstantTable(table, vals)


@dataclass
class ChevalleyLattice:
    lattice: IntegerLattice
    closed: bool
    violations: list


def chevalley_superalgebra(basis: ChevalleyBasis) -> ChevalleyLattice:
    """g_Z = Span_Z(B) and an exhaustive check that it is closed under the bracket."""
    g = basis.algebra
    elems = [list(v) for v in basis.elements()]
    lat = IntegerLattice.from_generators(elems, g.dim)
    coords = Coordinates(elems)
    violations = []
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            br = bracket(g, x, y)
            if not any(br):
                continue
            c = coords.coords(br)
            if c is None or any(v.denominator != 1 for v in c):
                violations.append((i, j))
    return ChevalleyLattice(lat, not violations, violations)


def cartan_coordinates(basis: ChevalleyBasis, h: Sequence) -> list[Fraction]:
    """Coordinates of a Cartan element in H_1..H_ℓ."""
    c = _cartan_coords(basis, h)
    if c is None:
        raise ValueError("element is not in the Cartan subalgebra")
    return c


__all__ = [
    "ChevalleyBasis",
    "ChevalleyReport",
    "ChevalleyLattice",
    "StructureConstantTable",
    "propose_basis",
    "verify_chevalley",
    "normalize_signs",
    "rescale_negatives",
    "rescale_magnitudes",
    "structure_constants",
    "chevalley_superalgebra",
    "cartan_coordinates",
    "lattice_coordinates",
]
