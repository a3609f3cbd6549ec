"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error or malformed input.
Set ``CHEVSUPER_CACHE_DIR`` to reuse built algebras across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .chevalley import chevalley_superalgebra, propose_basis, structure_constants, verify_chevalley
from .jsonio import (
    SchemaError,
    algebra_from_json,
    algebra_to_json,
    basis_from_json,
    basis_to_json,
    dumps,
    lattice_from_json,
    lattice_to_json,
    load,
    module_from_json,
    module_to_json,
    order_from_json,
    roots_from_json,
    roots_to_json,
)
from .kostant import generate_admissible, is_admissible
from .liesuper import UnsupportedFamilyError, build, form_table, verify_jacobi
from .repmod import EvenModule, induce, induced_lattice, natural_even_module, verify_representation
from .roots import coroots, positive_system, root_decomposition
from .superarith import MAX_GENERATORS
from .supergroup import FactorizationError, GroupWord, evaluate_word, factor_point, recompose

CACHE_ENV = "CHEVSUPER_CACHE_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _meta(args) -> dict:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func",) and not k.startswith("_")}
    return {"version": __version__, "config": config, "seed": args.seed}


def _emit(args, payload: dict) -> None:
    payload = {**payload, "meta": _meta(args)}
    payload.setdefault("schema", 1)
    text = dumps(payload)
    out = getattr(args, "out", None) or getattr(args, "report", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_functional(s: str | None):
    if s is None:
        return None
    try:
        return [Fraction(x) for x in s.split(",")]
    except ValueError:
        raise UsageError(f"bad functional {s!r}") from None


# ---------------------------------------------------------------------------
# loaders shared by the subcommands


def _algebra(args):
    return algebra_from_json(load(args.algebra), "algebra")


def _roots(args, g):
    rd = roots_from_json(load(args.roots), g, "roots")
    if rd.positive is None:
        rd = positive_system(rd)
    return rd


def _basis(args, g, rd):
    if getattr(args, "basis", None):
        return basis_from_json(load(args.basis), rd, "basis")
    return propose_basis(g, rd)


def _build_cached(family: str, m: int, n: int):
    cache = os.environ.get(CACHE_ENV)
    if cache:
        f = Path(cache) / f"{family.lower()}_{m}_{n}.json"
        if f.exists():
            try:
                return algebra_from_json(json.loads(f.read_text(encoding="utf-8")))
            except (ValueError, SchemaError):
                pass
    g = build(family, m, n)
    if cache:
        Path(cache).mkdir(parents=True, exist_ok=True)
        (Path(cache) / f"{family.lower()}_{m}_{n}.json").write_text(dumps(algebra_to_json(g)), encoding="utf-8")
    return g


# ---------------------------------------------------------------------------
# subcommands


def cmd_build(args) -> int:
    g = _build_cached(args.family, args.m, args.n)
    payload = algebra_to_json(g)
    if args.check:
        rep = verify_jacobi(g)
        payload["jacobi"] = {"passed": rep.passed, "counterexample": rep.counterexample}
        _emit(args, payload)
        return EXIT_OK if rep.passed else EXIT_FAIL
    _emit(args, payload)
    return EXIT_OK


def cmd_roots(args) -> int:
    g = _algebra(args)
    rd = positive_system(root_decomposition(g), _parse_functional(args.functional))
    payload = roots_to_json(rd, coroots(rd))
    payload["counts"] = {
        "even": len(rd.even_roots),
        "odd": len(rd.odd_roots),
        "dim_g1": len(g.odd_indices()),
        "N": len(rd.odd_roots),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_chevalley_propose(args) -> int:
    g = _algebra(args)
    rd = _roots(args, g)
    _emit(args, basis_to_json(propose_basis(g, rd)))
    return EXIT_OK


def cmd_chevalley_verify(args) -> int:
    g = _algebra(args)
    rd = _roots(args, g)
    basis = _basis(args, g, rd)
    rep = verify_chevalley(basis, rd, form_table(g))
    payload = {"kind": "chevalley_report", **rep.to_json()}
    if rep.passed:
        table = structure_constants(basis)
        payload["max_abs_structure_constant"] = max((abs(c) for c in table.c.values()), default=0)
        payload["closed_over_Z"] = chevalley_superalgebra(basis).closed
    _emit(args, payload)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_evenmodule(args) -> int:
    g = _algebra(args)
    V = natural_even_module(g)
    _emit(args, module_to_json(V))
    return EXIT_OK


def _module(args, g, rd, basis):
    V, _, _ = module_from_json(load(args.module), g, "module")
    return V


def cmd_kostant_check(args) -> int:
    g = _algebra(args)
    rd = _roots(args, g)
    basis = _basis(args, g, rd)
    V = _module(args, g, rd, basis)
    M = lattice_from_json(load(args.lattice), "lattice")
    if M.dim != V.dim:
        raise SchemaError("lattice", f"dimension {M.dim} does not match module dimension {V.dim}")
    rep = is_admissible(V, M, basis)
    _emit(args, {"kind": "admissibility_report", **rep.to_json()})
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_kostant_close(args) -> int:
    g = _algebra(args)
    rd = _roots(args, g)
    basis = _basis(args, g, rd)
    V = _module(args, g, rd, basis)
    seed = lattice_from_json(load(args.lattice), "lattice")
    L = generate_admissible(V, seed, basis)
    _emit(args, lattice_to_json(L))
    return EXIT_OK


def cmd_induce(args) -> int:
    g = _algebra(args)
    rd = _roots(args, g)
    basis = _basis(args, g, rd)
    Vt, _, _ = module_from_json(load(args.evenmodule), g, "evenmodule")
    if not isinstance(Vt, EvenModule):
        raise SchemaError("evenmodule.action", "an even module must act by exactly the even basis elements")
    order = order_from_json(load(args.order), rd, "order") if args.order else None
    V = induce(g, basis, Vt, order)
    rep = verify_representation(V)
    payload = module_to_json(V)
    payload["representation"] = rep.to_json()
    if args.lattice:
        payload["lattice"] = lattice_to_json(induced_lattice(V, lattice_from_json(load(args.lattice), "lattice")))
    _emit(args, payload)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _group_inputs(args):
    V, rd, basis = module_from_json(load(args.module), None, "module")
    if rd is None or basis is None:
        raise SchemaError("module", "module file must embed roots and basis (as written by `induce`)")
    data = load(args.word)
    if isinstance(data, dict):
        q = int(data.get("q", args.q))
        tokens = data.get("tokens")
        if tokens is None:
            raise SchemaError("word.tokens", "missing field")
    else:
        q, tokens = args.q, data
    if not 0 <= q <= MAX_GENERATORS:
        raise UsageError(f"q must be in 0..{MAX_GENERATORS}")
    try:
        w = GroupWord.from_json(tokens, rd, q)
    except (KeyError, IndexError, TypeError) as exc:
        raise SchemaError("word", f"malformed token: {exc}") from None
    return V, rd, basis, w


def cmd_group_eval(args) -> int:
    V, rd, basis, w = _group_inputs(args)
    g = evaluate_word(w, V, basis)
    _emit(args, {"kind": "group_element", "matrix": g.to_json()})
    return EXIT_OK


def cmd_group_factor(args) -> int:
    V, rd, basis, w = _group_inputs(args)
    order = order_from_json(load(args.order), rd, "order") if args.order else None
    g = evaluate_word(w, V, basis)
    try:
        fp = factor_point(g, V, order, basis)
    except FactorizationError as exc:
        _emit(args, {"kind": "factored_point", "error": str(exc)})
        return EXIT_FAIL
    ok = recompose(fp, V, fp.order, basis) == g
    _emit(args, {"kind": "factored_point", **fp.to_json(), "order": [rd.index(r) for r in fp.order],
                 "recomposition_exact": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_selftest(args) -> int:
    from .supergroup import random_word

    checks = {}
    g = build("gl", 2, 1)
    checks["jacobi"] = verify_jacobi(g).passed
    rd = positive_system(root_decomposition(g))
    basis = propose_basis(g, rd)
    checks["chevalley"] = verify_chevalley(basis, rd).passed
    checks["N_equals_dim_g1"] = len(rd.odd_roots) == len(g.odd_indices()) == 4
    Vt = natural_even_module(g)
    V = induce(g, basis, Vt)
    checks["induced_dim"] = V.dim == 2 ** 4 * Vt.dim
    checks["representation"] = verify_representation(V).passed
    from .lattice import IntegerLattice

    checks["admissible"] = is_admissible(V, induced_lattice(V, IntegerLattice.standard(Vt.dim)), basis).passed
    ok = True
    for s in range(args.words):
        w = random_word(rd, args.q, 8, seed=args.seed * 1000 + s)
        G = evaluate_word(w, V)
        fp = factor_point(G, V)
        ok = ok and recompose(fp, V) == G and fp.g0.all_entries_even()
    checks["factorization"] = ok
    passed = all(checks.values())
    _emit(args, {"kind": "selftest", "checks": checks, "passed": passed})
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chevsuper", description="Chevalley supergroups over Grassmann algebras")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    b = sub.add_parser("build", parents=[common], help="construct a Lie superalgebra")
    b.add_argument("--family", required=True)
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--check", action="store_true", help="also verify the Jacobi identity")
    b.set_defaults(func=cmd_build)

    r = sub.add_parser("roots", parents=[common], help="root decomposition and positive system")
    r.add_argument("--algebra", required=True)
    r.add_argument("--functional", default=None, help="comma-separated coefficients of the Cartan element")
    r.set_defaults(func=cmd_roots)

    ch = sub.add_parser("chevalley", help="Chevalley bases")
    chs = ch.add_subparsers(dest="action", parser_class=_Parser)
    for name, fn in (("propose", cmd_chevalley_propose), ("verify", cmd_chevalley_verify)):
        c = chs.add_parser(name, parents=[common])
        c.add_argument("--algebra", required=True)
        c.add_argument("--roots", required=True)
        if name == "verify":
            c.add_argument("--basis", default=None)
            c.add_argument("--report", default=None)
        c.set_defaults(func=fn)

    e = sub.add_parser("evenmodule", parents=[common], help="natural g0-module")
    e.add_argument("--algebra", required=True)
    e.set_defaults(func=cmd_evenmodule)

    k = sub.add_parser("kostant", help="admissible lattices")
    ks = k.add_subparsers(dest="action", parser_class=_Parser)
    for name, fn in (("check", cmd_kostant_check), ("close", cmd_kostant_close)):
        c = ks.add_parser(name, parents=[common])
        for f in ("--algebra", "--roots", "--module", "--lattice"):
            c.add_argument(f, required=True)
        c.add_argument("--basis", default=None)
        c.set_defaults(func=fn)

    i = sub.add_parser("induce", parents=[common], help="induced module")
    for f in ("--algebra", "--roots", "--evenmodule"):
        i.add_argument(f, required=True)
    i.add_argument("--basis", default=None)
    i.add_argument("--order", default=None)
    i.add_argument("--lattice", default=None, help="lattice in the even module to induce")
    i.set_defaults(func=cmd_induce)

    gr = sub.add_parser("group", help="supergroup points")
    grs = gr.add_subparsers(dest="action", parser_class=_Parser)
    for name, fn in (("eval", cmd_group_eval), ("factor", cmd_group_factor)):
        c = grs.add_parser(name, parents=[common])
        c.add_argument("--module", required=True)
        c.add_argument("--word", required=True)
        c.add_argument("--q", type=int, default=4)
        if name == "factor":
            c.add_argument("--order", default=None)
        c.set_defaults(func=fn)

    s = sub.add_parser("selftest", parents=[common], help="run the gl(2|1) pipeline")
    s.add_argument("--q", type=int, default=4)
    s.add_argument("--words", type=int, default=5)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            raise UsageError("missing subcommand")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedFamilyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
