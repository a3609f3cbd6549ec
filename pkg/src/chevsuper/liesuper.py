"""Classical Lie superalgebras built from explicit matrix realizations.

Every algebra is a list of homogeneous matrices in the defining m|n
representation.  The structure constants are obtained from matrix
supercommutators and then frozen into a sparse table; the realization stays
attached so the table can always be re-derived and checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .qla import Coordinates, nullspace, primitive, rank
from .superarith import QMatrix, supercommutator


class UnsupportedFamilyError(ValueError):
    pass


class ExcludedFamilyError(UnsupportedFamilyError):
    """P(n), Q(n) and D(2,1;a): outside the classical families handled here."""


@dataclass(frozen=True)
class BasisElement:
    id: int
    name: str
    parity: int
    realization: QMatrix


@dataclass(frozen=True)
class LieSuperalgebra:
    name: str
    family: str
    m: int
    n: int
    basis: tuple[BasisElement, ...]
    bracket_table: dict = field(hash=False, compare=False)
    cartan: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def parities(self) -> list[int]:
        return [b.parity for b in self.basis]

    def even_indices(self) -> list[int]:
        return [b.id for b in self.basis if b.parity == 0]

    def odd_indices(self) -> list[int]:
        return [b.id for b in self.basis if b.parity == 1]

    def super_dim(self) -> tuple[int, int]:
        return len(self.even_indices()), len(self.odd_indices())

    def index(self, name: str) -> int:
        for b in self.basis:
            if b.name == name:
                return b.id
        raise KeyError(name)

    def unit(self, i: int) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def vector(self, **coeffs) -> list[Fraction]:
        """Coefficient vector from basis names, e.g. ``g.vector(E11=1, E22=-1)``."""
        v = [Fraction(0)] * self.dim
        for name, c in coeffs.items():
            v[self.index(name)] += Fraction(c)
        return v

    def realize(self, x: Sequence) -> QMatrix:
        size = self.m + self.n
        out = QMatrix.zeros(size)
        for c, b in zip(x, self.basis):
            if c:
                out = out + b.realization.scale(c)
        return out

    def parity_of(self, x: Sequence) -> int | None:
        ps = {self.basis[i].parity for i, c in enumerate(x) if c}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def with_bracket_table(self, table: dict) -> "LieSuperalgebra":
        return replace(self, bracket_table=table)


@dataclass(frozen=True)
class BilinearFormTable:
    gram: tuple[tuple[Fraction, ...], ...]

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = self.gram[i]
                total += xi * sum((row[j] * yj for j, yj in enumerate(y) if yj), Fraction(0))
        return total


# ---------------------------------------------------------------------------
# construction


def _derive_table(basis: Sequence[BasisElement]) -> dict:
    coords = Coordinates([b.realization.flat() for b in basis])
    table = {}
    for x in basis:
        for y in basis:
            br = supercommutator(x.realization, y.realization, x.parity, y.parity)
            if br.is_zero():
                continue
            c = coords.coords(br.flat())
            if c is None:
                raise ValueError(f"[{x.name}, {y.name}] leaves the span of the basis")
            table[(x.id, y.id)] = tuple((k, ck) for k, ck in enumerate(c) if ck)
    return table


def _assemble(name: str, family: str, m: int, n: int, elems, cartan_names) -> LieSuperalgebra:
    basis = tuple(BasisElement(i, nm, p, r) for i, (nm, p, r) in enumerate(elems))
    table = _derive_table(basis)
    names = [b.name for b in basis]
    cartan = tuple(names.index(c) for c in cartan_names)
    return LieSuperalgebra(name, family, m, n, basis, table, cartan)


def _index_parity(i: int, m: int) -> int:
    return 0 if i < m else 1


def _check_sizes(m: int, n: int) -> None:
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise UnsupportedFamilyError(f"unsupported family: sizes must be positive integers, got {m}|{n}")


def build_gl(m: int, n: int) -> LieSuperalgebra:
    """gl(m|n) on the elementary matrices E_ij, listed row by row."""
    _check_sizes(m, n)
    size = m + n
    elems = []
    for i in range(size):
        for j in range(size):
            elems.append((f"E{i + 1}{j + 1}" if size < 10 else f"E{i + 1},{j + 1}",
                          _index_parity(i, m) ^ _index_parity(j, m), QMatrix.unit(size, i, j)))
    cartan = [e[0] for e in elems if e[2].is_diagonal()]
    return _assemble(f"gl({m}|{n})", "gl", m, n, elems, cartan)


def build_sl(m: int, n: int) -> LieSuperalgebra:
    """sl(m|n), m != n: supertraceless matrices.

    Cartan basis h_i = E_ii - E_{i+1,i+1} except h_m = E_mm + E_{m+1,m+1}, the
    integral basis of supertraceless diagonal matrices.
    """
    _check_sizes(m, n)
    if m == n:
        raise UnsupportedFamilyError(f"unsupported family: sl({m}|{n}) is not of the classical type handled here")
    size = m + n
    gl = build_gl(m, n)
    elems = []
    for i in range(size - 1):
        sign = 1 if i + 1 == m else -1
        h = QMatrix.unit(size, i, i) + QMatrix.unit(size, i + 1, i + 1).scale(sign)
        elems.append((f"h{i + 1}", 0, h))
    for b in gl.basis:
        if not b.realization.is_diagonal():
            elems.append((b.name, b.parity, b.realization))
    return _assemble(f"sl({m}|{n})", "sl", m, n, elems, [f"h{i + 1}" for i in range(size - 1)])


def osp_form(M: int, two_n: int) -> tuple[QMatrix, list[str], list[list[int]]]:
    """Gram matrix, vector labels and weights of the osp(M|2n) defining space.

    Even vectors e_1..e_r, e_1'..e_r' (and e_0 when M is odd), odd vectors
    f_1..f_n, f_1'..f_n'.  Weights are coordinates in (ε_1..ε_r, δ_1..δ_n).
    """
    r, n = M // 2, two_n // 2
    labels, weights = [], []
    ell = r + n
    for i in range(r):
        labels.append(f"e{i + 1}")
        weights.append([int(k == i) for k in range(ell)])
    for i in range(r):
        labels.append(f"e{i + 1}'")
        weights.append([-int(k == i) for k in range(ell)])
    if M % 2:
        labels.append("e0")
        weights.append([0] * ell)
    for a in range(n):
        labels.append(f"f{a + 1}")
        weights.append([int(k == r + a) for k in range(ell)])
    for a in range(n):
        labels.append(f"f{a + 1}'")
        weights.append([-int(k == r + a) for k in range(ell)])
    size = M + two_n
    B = [[0] * size for _ in range(size)]
    for i in range(r):
        B[i][r + i] = B[r + i][i] = 1
    if M % 2:
        B[2 * r][2 * r] = 1
    for a in range(n):
        fa, fb = M + a, M + n + a
        B[fa][fb], B[fb][fa] = 1, -1
    return QMatrix.from_rows(B), labels, weights


def _weight_name(w: Sequence[int], r: int) -> str:
    parts = []
    for k, c in enumerate(w):
        if not c:
            continue
        sym = f"ε{k + 1}" if k < r else f"δ{k - r + 1}"
        coef = "" if abs(c) == 1 else str(abs(c))
        parts.append(("-" if c < 0 else "+") + coef + sym)
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def build_osp(M: int, two_n: int) -> LieSuperalgebra:
    """osp(M|2n): stabilizer of the even supersymmetric form of :func:`osp_form`.

    The basis is the diagonal Cartan followed by one primitive integral root
    vector per root space, each found as the kernel of the defining equations
    restricted to that weight.
    """
    if not isinstance(M, int) or not isinstance(two_n, int) or M < 1 or two_n < 2 or two_n % 2:
        raise UnsupportedFamilyError(f"unsupported family: osp({M}|{two_n}) needs M >= 1 and a positive even 2n")
    B, labels, weights = osp_form(M, two_n)
    size = M + two_n
    par = [0] * M + [1] * two_n
    r = M // 2
    Bl = B.tolist()

    def equations(cells, p):
        # x = sum_c t_c E_c; condition (x^T B)_{kl} + (-1)^{p|k|} (B x)_{kl} = 0
        rows = []
        for k in range(size):
            for l in range(size):
                row = []
                for (a, b) in cells:
                    # (E_ab^T B)_{kl} = [k == b] B[a][l];  (B E_ab)_{kl} = B[k][a] [l == b]
                    v = (Bl[a][l] if k == b else 0) + (-1) ** (p * par[k]) * (Bl[k][a] if l == b else 0)
                    row.append(v)
                if any(row):
                    rows.append(row)
        return rows

    groups: dict[tuple, list] = {}
    for a in range(size):
        for b in range(size):
            w = tuple(x - y for x, y in zip(weights[a], weights[b]))
            groups.setdefault((par[a] ^ par[b], w), []).append((a, b))

    elems = []
    cartan_names = []
    ell = r + two_n // 2
    for k in range(ell):
        lab = labels[k] if k < r else labels[M + (k - r)]
        lab2 = labels[r + k] if k < r else labels[M + two_n // 2 + (k - r)]
        i, j = labels.index(lab), labels.index(lab2)
        h = QMatrix.unit(size, i, i) - QMatrix.unit(size, j, j)
        name = f"H{k + 1}"
        elems.append((name, 0, h))
        cartan_names.append(name)
    zero_key = (0, tuple([0] * ell))
    zero_sol = nullspace(equations(groups[zero_key], 0), len(groups[zero_key]))
    if len(zero_sol) != ell:
        raise AssertionError("unexpected Cartan dimension")
    roots = sorted((k for k in groups if any(k[1])), key=lambda k: (k[0], [-x for x in k[1]]))
    for key in roots:
        p, w = key
        cells = groups[key]
        sol = nullspace(equations(cells, p), len(cells))
        if not sol:
            continue
        if len(sol) != 1:
            raise AssertionError(f"root space {w} is not one-dimensional")
        vec = primitive(sol[0])
        mat = QMatrix.zeros(size)
        for (a, b), c in zip(cells, vec):
            if c:
                mat = mat + QMatrix.unit(size, a, b).scale(c)
        elems.append((f"X[{_weight_name(w, r)}]", p, mat))
    return _assemble(f"osp({M}|{two_n})", "osp", M, two_n, elems, cartan_names)


def build(family: str, m: int, n: int) -> LieSuperalgebra:
    fam = family.lower()
    if fam == "gl":
        return build_gl(m, n)
    if fam == "sl":
        return build_sl(m, n)
    if fam == "osp":
        return build_osp(m, n)
    if fam in {"p", "q", "d21a", "d(2,1;a)"}:
        raise ExcludedFamilyError(f"unsupported family: {family} is excluded")
    raise UnsupportedFamilyError(f"unsupported family: {family}")


# ---------------------------------------------------------------------------
# bracket and invariant form


def bracket_basis(g: LieSuperalgebra, i: int, j: int) -> tuple:
    return g.bracket_table.get((i, j), ())


def bracket(g: LieSuperalgebra, x: Sequence, y: Sequence) -> list[Fraction]:
    """Bilinear extension of the structure-constant table."""
    out = [Fraction(0)] * g.dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, t in g.bracket_table.get((i, j), ()):
                out[k] += c * t
    return out


def supertrace(mat: QMatrix, m: int) -> Fraction:
    d = mat.diagonal_entries()
    return sum(d[:m], Fraction(0)) - sum(d[m:], Fraction(0))


def form_table(g: LieSuperalgebra) -> BilinearFormTable:
    """Gram matrix of (x, y) = str(xy) in the defining realization."""
    gram = []
    for x in g.basis:
        gram.append(tuple(supertrace(x.realization @ y.realization, g.m) for y in g.basis))
    return BilinearFormTable(tuple(gram))


def supertrace_form(g: LieSuperalgebra, x: Sequence, y: Sequence) -> Fraction:
    return supertrace(g.realize(x) @ g.realize(y), g.m)


def is_nondegenerate(form: BilinearFormTable) -> bool:
    return rank(form.gram) == len(form.gram)


# ---------------------------------------------------------------------------
# consistency checks


@dataclass
class JacobiReport:
    passed: bool
    antisymmetry: bool
    jacobi: bool
    counterexample: dict | None = None

    def __bool__(self):
        return self.passed


def _sign(a: int, b: int) -> int:
    return -1 if a and b else 1


def verify_jacobi(g: LieSuperalgebra) -> JacobiReport:
    """Exhaustive check of super-antisymmetry and the super Jacobi identity.

    Jacobi is taken in the form
    (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0.
    """
    par = g.parities
    dim = g.dim
    first = None
    anti_ok = True
    for i in range(dim):
        for j in range(i, dim):
            lhs = dict(g.bracket_table.get((i, j), ()))
            rhs = dict(g.bracket_table.get((j, i), ()))
            s = -_sign(par[i], par[j])
            if any(lhs.get(k, 0) != s * rhs.get(k, 0) for k in set(lhs) | set(rhs)):
                anti_ok = False
                if first is None:
                    first = {"kind": "antisymmetry", "pair": [g.basis[i].name, g.basis[j].name]}
    units = [g.unit(i) for i in range(dim)]
    jac_ok = True
    inner = {}
    for i in range(dim):
        for j in range(dim):
            inner[(i, j)] = bracket(g, units[i], units[j])
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                total = [Fraction(0)] * dim
                for (a, b, c, s) in (
                    (i, j, k, _sign(par[i], par[k])),
                    (j, k, i, _sign(par[j], par[i])),
                    (k, i, j, _sign(par[k], par[j])),
                ):
                    t = bracket(g, units[a], inner[(b, c)])
                    for idx, v in enumerate(t):
                        if v:
                            total[idx] += s * v
                if any(total):
                    jac_ok = False
                    if first is None or first["kind"] == "antisymmetry":
                        first = {"kind": "jacobi", "triple": [g.basis[i].name, g.basis[j].name, g.basis[k].name]}
                    break
            if not jac_ok:
                break
        if not jac_ok:
            break
    return JacobiReport(anti_ok and jac_ok, anti_ok, jac_ok, first)


def verify_realization(g: LieSuperalgebra) -> bool:
    """The frozen table agrees with the matrix supercommutators."""
    return _derive_table(g.basis) == {k: v for k, v in g.bracket_table.items() if v}
