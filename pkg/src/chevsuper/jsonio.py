"""Deterministic JSON encoding of algebras, root data, bases, modules and lattices."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .chevalley import ChevalleyBasis
from .kostant import RationalModule
from .lattice import IntegerLattice
from .liesuper import BasisElement, LieSuperalgebra
from .repmod import EvenModule, InducedModule
from .roots import Root, RootDatum
from .superarith import QMatrix, parse_rational, rational_str

SCHEMA = 1


class SchemaError(ValueError):
    """Malformed document; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _get(data: Mapping, key: str, path: str):
    if not isinstance(data, Mapping):
        raise SchemaError(path, "expected an object")
    if key not in data:
        raise SchemaError(f"{path}.{key}", "missing field")
    return data[key]


def _rat(x, path: str) -> Fraction:
    try:
        return parse_rational(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise SchemaError(path, f"not a rational: {x!r}") from None


def _ratvec(v, path: str) -> list[Fraction]:
    if not isinstance(v, list):
        raise SchemaError(path, "expected a list")
    return [_rat(x, f"{path}[{i}]") for i, x in enumerate(v)]


def _vec_json(v) -> list[str]:
    return [rational_str(x) for x in v]


def _matrix(data, path: str) -> QMatrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError(path, "expected a matrix (list of rows)")
    return QMatrix.from_rows([_ratvec(r, f"{path}[{i}]") for i, r in enumerate(data)])


# ---------------------------------------------------------------------------
# algebra


def algebra_to_json(g: LieSuperalgebra) -> dict:
    brackets = [
        {"x": i, "y": j, "terms": [[k, rational_str(c)] for k, c in terms]}
        for (i, j), terms in sorted(g.bracket_table.items())
    ]
    return {
        "schema": SCHEMA,
        "kind": "algebra",
        "name": g.name,
        "family": g.family,
        "m": g.m,
        "n": g.n,
        "cartan": list(g.cartan),
        "basis": [
            {"id": b.id, "name": b.name, "parity": b.parity, "realization": b.realization.to_json()}
            for b in g.basis
        ],
        "brackets": brackets,
    }


def algebra_from_json(data: Mapping, path: str = "algebra") -> LieSuperalgebra:
    basis = []
    for k, b in enumerate(_get(data, "basis", path)):
        p = f"{path}.basis[{k}]"
        parity = _get(b, "parity", p)
        if parity not in (0, 1):
            raise SchemaError(f"{p}.parity", "parity must be 0 or 1")
        basis.append(BasisElement(int(_get(b, "id", p)), str(_get(b, "name", p)), parity,
                                  _matrix(_get(b, "realization", p), f"{p}.realization")))
    if [b.id for b in basis] != list(range(len(basis))):
        raise SchemaError(f"{path}.basis", "ids must be 0..dim-1 in order")
    table = {}
    for k, e in enumerate(_get(data, "brackets", path)):
        p = f"{path}.brackets[{k}]"
        terms = tuple((int(t[0]), _rat(t[1], f"{p}.terms[{a}]")) for a, t in enumerate(_get(e, "terms", p)))
        table[(int(_get(e, "x", p)), int(_get(e, "y", p)))] = terms
    return LieSuperalgebra(str(_get(data, "name", path)), str(_get(data, "family", path)),
                           int(_get(data, "m", path)), int(_get(data, "n", path)), tuple(basis), table,
                           tuple(int(c) for c in _get(data, "cartan", path)))


# ---------------------------------------------------------------------------
# roots


def roots_to_json(rd: RootDatum, coroots: Mapping | None = None) -> dict:
    out = {
        "schema": SCHEMA,
        "kind": "roots",
        "algebra": rd.algebra.name,
        "cartan": list(rd.cartan),
        "functional": _vec_json(rd.functional) if rd.functional is not None else None,
        "roots": [],
        "odd_order": [rd.index(r) for r in rd.odd_order()] if rd.positive is not None else None,
    }
    for i, r in enumerate(rd.roots):
        entry = {
            "index": i,
            "label": r.label(),
            "coords": _vec_json(r.coords),
            "parity": r.parity,
            "vector": _vec_json(rd.root_vectors[i]),
        }
        if rd.positive is not None:
            entry["positive"] = rd.positive[i]
        if coroots is not None:
            entry["coroot"] = _vec_json(coroots[r])
        out["roots"].append(entry)
    return out


def roots_from_json(data: Mapping, g: LieSuperalgebra, path: str = "roots") -> RootDatum:
    roots, vecs, pos = [], [], []
    for k, e in enumerate(_get(data, "roots", path)):
        p = f"{path}.roots[{k}]"
        roots.append(Root(tuple(_ratvec(_get(e, "coords", p), f"{p}.coords")), int(_get(e, "parity", p))))
        vecs.append(tuple(_ratvec(_get(e, "vector", p), f"{p}.vector")))
        if "positive" in e:
            pos.append(bool(e["positive"]))
    func = data.get("functional")
    return RootDatum(g, tuple(int(c) for c in _get(data, "cartan", path)), tuple(roots), tuple(vecs),
                     tuple(_ratvec(func, f"{path}.functional")) if func is not None else None,
                     tuple(pos) if len(pos) == len(roots) and pos else None)


def order_from_json(data, rd: RootDatum, path: str = "order") -> tuple[Root, ...]:
    if isinstance(data, Mapping):
        data = _get(data, "order", path)
    if not isinstance(data, list):
        raise SchemaError(path, "expected a list of root indices")
    try:
        return tuple(rd.roots[int(i)] for i in data)
    except (IndexError, ValueError, TypeError):
        raise SchemaError(path, "invalid root index") from None


# ---------------------------------------------------------------------------
# Chevalley basis


def basis_to_json(b: ChevalleyBasis) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "chevalley_basis",
        "cartan_elements": [_vec_json(h) for h in b.cartan_elements],
        "root_vectors": [_vec_json(x) for x in b.root_vectors],
        "sigma": [b.rd.sigma(r) for r in b.rd.roots] if b.rd.positive is not None else None,
    }


def basis_from_json(data: Mapping, rd: RootDatum, path: str = "basis") -> ChevalleyBasis:
    H = [tuple(_ratvec(h, f"{path}.cartan_elements[{i}]")) for i, h in enumerate(_get(data, "cartan_elements", path))]
    X = [tuple(_ratvec(x, f"{path}.root_vectors[{i}]")) for i, x in enumerate(_get(data, "root_vectors", path))]
    if len(X) != len(rd.roots):
        raise SchemaError(f"{path}.root_vectors", f"expected {len(rd.roots)} root vectors")
    for i, v in enumerate(H + X):
        if len(v) != rd.algebra.dim:
            raise SchemaError(path, f"element {i} has length {len(v)}, expected {rd.algebra.dim}")
    return ChevalleyBasis(rd, tuple(H), tuple(X))


# ---------------------------------------------------------------------------
# lattices


def lattice_to_json(L: IntegerLattice) -> dict:
    return {"schema": SCHEMA, "kind": "lattice", **L.to_json()}


def lattice_from_json(data, path: str = "lattice") -> IntegerLattice:
    """Accepts a lattice document or a bare list of rational generator vectors."""
    if isinstance(data, list):
        vecs = [_ratvec(v, f"{path}[{i}]") for i, v in enumerate(data)]
        if not vecs:
            raise SchemaError(path, "no generators")
        return IntegerLattice.from_generators(vecs)
    den = _rat(_get(data, "den", path), f"{path}.den")
    if den.denominator != 1 or den <= 0:
        raise SchemaError(f"{path}.den", "must be a positive integer")
    cols = _get(data, "cols", path)
    vecs = [[x / den for x in _ratvec(c, f"{path}.cols[{i}]")] for i, c in enumerate(cols)]
    if not vecs:
        raise SchemaError(f"{path}.cols", "no generators")
    return IntegerLattice.from_generators(vecs)


# ---------------------------------------------------------------------------
# modules


def module_to_json(V: RationalModule, rd: RootDatum | None = None, basis: ChevalleyBasis | None = None) -> dict:
    out = {
        "schema": SCHEMA,
        "kind": "induced_module" if isinstance(V, InducedModule) else "module",
        "dim": V.dim,
        "parity_split": list(V.parity_split),
        "parities": list(V.parities),
        "action": {str(i): V.action[i].to_json() for i in V.indices},
        "algebra": algebra_to_json(V.algebra),
    }
    if isinstance(V, InducedModule):
        rd = V.chevalley.rd
        basis = V.chevalley
        out["order"] = [rd.index(r) for r in V.order]
        out["pairs"] = [[list(S), j] for S, j in V.pairs]
        out["even_module"] = module_to_json(V.even_module)
        del out["even_module"]["algebra"]
    if rd is not None:
        out["roots"] = roots_to_json(rd)
    if basis is not None:
        out["basis"] = basis_to_json(basis)
    return out


def module_from_json(data: Mapping, g: LieSuperalgebra | None = None, path: str = "module"):
    """Returns (module, root datum or None, basis or None)."""
    if g is None:
        g = algebra_from_json(_get(data, "algebra", path), f"{path}.algebra")
    action_json = _get(data, "action", path)
    if not isinstance(action_json, Mapping):
        raise SchemaError(f"{path}.action", "expected an object keyed by basis id")
    action = {}
    for key, mat in action_json.items():
        try:
            i = int(key)
        except ValueError:
            raise SchemaError(f"{path}.action", f"bad basis id {key!r}") from None
        if not 0 <= i < g.dim:
            raise SchemaError(f"{path}.action", f"basis id {i} out of range")
        action[i] = _matrix(mat, f"{path}.action.{key}")
    parities = tuple(int(p) for p in _get(data, "parities", path))
    dim = int(_get(data, "dim", path))
    if len(parities) != dim:
        raise SchemaError(f"{path}.parities", "length differs from dim")
    for i, m in action.items():
        if m.shape != (dim, dim):
            raise SchemaError(f"{path}.action.{i}", f"expected a {dim}x{dim} matrix")
    rd = roots_from_json(data["roots"], g, f"{path}.roots") if "roots" in data else None
    basis = basis_from_json(data["basis"], rd, f"{path}.basis") if "basis" in data and rd is not None else None
    if data.get("kind") == "induced_module" and basis is not None:
        even = module_from_json({**data["even_module"], "algebra": None}, g, f"{path}.even_module")[0]
        even = EvenModule(g, even.action, even.parities)
        order = order_from_json(_get(data, "order", path), rd, f"{path}.order")
        pairs = tuple((tuple(S), int(j)) for S, j in _get(data, "pairs", path))
        return InducedModule(g, action, parities, basis, even, order, pairs), rd, basis
    if sorted(action) == g.even_indices() and len(action) < g.dim:
        return EvenModule(g, action, parities), rd, basis
    return RationalModule(g, action, parities), rd, basis


def load(path: str) -> Any:
    """Read a JSON file; JSON syntax errors become SchemaError with line/column."""
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    except OSError as exc:
        raise SchemaError(path, exc.strerror or str(exc)) from None


__all__ = [
    "SCHEMA",
    "SchemaError",
    "dumps",
    "load",
    "algebra_to_json",
    "algebra_from_json",
    "roots_to_json",
    "roots_from_json",
    "order_from_json",
    "basis_to_json",
    "basis_from_json",
    "lattice_to_json",
    "lattice_from_json",
    "module_to_json",
    "module_from_json",
]
