"""Command-line front end.

Every command prints one report, JSON by default.  Exit status is 0 when the
evaluation finished (a "no code" answer included), 1 for bad input and 2 when
a search limit ran out first.

    cayley-codes enumerate --group 6 --conn "{1,5}"
    cayley-codes theorem --group 12 --conn "{1,3,5,7,9,11}" --id all
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Optional, Sequence

from .crossval import CrossvalScope, registry_crossvalidate
from .cyclotomic import cyclotomic, cyclotomic_divisibility_profile, subset_polynomial
from .errors import CayleyCodesError, InputError, InternalConsistencyError, LimitExceeded
from .groups import AbelianGroup, parse_group, subgroup_generated
from .search import (
    MODES,
    SearchLimits,
    check_sufficiency_moduli,
    canonical_code_from_moduli,
    enumerate_codes,
    lift_codes,
    reduce_instance,
    subgroup_code_connection_set,
)
from .subsets import GroupSubset, parse_subset
from .theorems import CHECKERS, check_circulant_tpc, is_good_group
from .tiling import graph_definition_perfect, graph_definition_total, is_code, polynomial_code_criterion

SCHEMA = "cayley-codes/1"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_LIMIT = 2


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of printing usage and exiting."""

    def error(self, message: str):
        raise InputError(message)


# -- argument helpers ------------------------------------------------------------


def _group(args) -> AbelianGroup:
    if not args.group:
        raise InputError("--group is required")
    return parse_group(args.group)


def _subset(G: AbelianGroup, text: Optional[str], flag: str) -> GroupSubset:
    if text is None:
        raise InputError(f"{flag} is required")
    return parse_subset(G, text)


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        if path.endswith(".toml"):
            try:
                import tomllib
            except ImportError as exc:  # Python 3.10
                raise InputError("TOML configs need Python 3.11 or later; use JSON") from exc
            data = tomllib.loads(raw.decode())
        else:
            data = json.loads(raw)
    except (ValueError, UnicodeDecodeError) as exc:
        raise InputError(f"malformed config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("config must be a table/object")
    allowed = {"max_order", "max_nodes", "time_budget_ms", "mode"}
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - allowed
    if unknown:
        raise InputError(f"unknown config keys: {sorted(unknown)}")
    return data


def _limits(args) -> SearchLimits:
    conf = _load_config(getattr(args, "config", None))
    for key in ("max_order", "max_nodes", "time_budget_ms", "mode"):
        value = getattr(args, key, None)
        if value is not None:
            conf[key] = value
    for key in ("max_order", "max_nodes", "time_budget_ms"):
        if key in conf and (not isinstance(conf[key], int) or conf[key] < 1):
            raise InputError(f"{key} must be a positive integer")
    return SearchLimits(**conf)


def _codes(codes: Sequence[GroupSubset]) -> list[str]:
    return [str(c) for c in codes]


# -- commands --------------------------------------------------------------------


def cmd_verify(args) -> tuple[dict, int]:
    G = _group(args)
    S = _subset(G, args.conn, "--conn")
    C = _subset(G, args.code, "--code")
    rep = is_code(G, S, C, args.total)
    graph = graph_definition_total(S, C) if args.total else graph_definition_perfect(S, C)
    return {
        "group": str(G),
        "connection_set": str(S),
        "code": str(C),
        "total": args.total,
        "holds": bool(rep.holds),
        "factorization": rep.to_json(),
        "graph_definition": graph,
        "group_ring_identity": polynomial_code_criterion(G, S, C, args.total),
    }, EXIT_OK


def cmd_enumerate(args) -> tuple[dict, int]:
    G = _group(args)
    S = _subset(G, args.conn, "--conn")
    res = enumerate_codes(G, S, args.total, _limits(args))
    out = {
        **res.instance.to_json(),
        "mode": res.mode,
        "codes": _codes(res.codes),
        "count": len(res.codes),
        "exhaustive": res.exhaustive,
        "admits": res.admits,
        "node_count": res.node_count,
    }
    if res.mode == "identity-orbit" and res.exhaustive:
        out["orbit_size"] = res.orbit_size()
    if res.limit_hit:
        out["limit_hit"] = res.limit_hit
        return out, EXIT_LIMIT
    return out, EXIT_OK


def cmd_reduce(args) -> tuple[dict, int]:
    G = _group(args)
    S = _subset(G, args.conn, "--conn")
    R = reduce_instance(G, S, args.total)
    out: dict[str, Any] = {
        "original": R.original.to_json(),
        "kernel": str(R.kernel),
        "kernel_order": R.kernel.order,
        "reduced": R.reduced.to_json(),
        "is_identity": R.is_identity,
    }
    if args.solve:
        res = enumerate_codes(R.reduced.group, R.reduced.connection_set, False, _limits(args))
        lifted = lift_codes(R, res.codes) if res.exhaustive else []
        out.update({
            "reduced_codes": _codes(res.codes),
            "lifted_count": len(lifted),
            "exhaustive": res.exhaustive,
        })
        if res.limit_hit:
            out["limit_hit"] = res.limit_hit
            return out, EXIT_LIMIT
    return out, EXIT_OK


def cmd_lift(args) -> tuple[dict, int]:
    G = _group(args)
    S = _subset(G, args.conn, "--conn")
    R = reduce_instance(G, S)
    if not args.code:
        raise InputError("give at least one reduced code with --code")
    reduced = [parse_subset(R.reduced.group, text) for text in args.code]
    lifted = lift_codes(R, reduced)
    return {
        "kernel": str(R.kernel),
        "reduced": R.reduced.to_json(),
        "reduced_codes": _codes(reduced),
        "codes": _codes(lifted),
        "count": len(lifted),
    }, EXIT_OK


def cmd_construct(args) -> tuple[dict, int]:
    G = _group(args)
    if (args.conn is None) == (args.gens is None):
        raise InputError("give exactly one of --conn (moduli construction) or --gens (subgroup code)")
    if args.conn is not None:
        S = _subset(G, args.conn, "--conn")
        moduli = check_sufficiency_moduli(S, args.total)
        out: dict[str, Any] = {"group": str(G), "connection_set": str(S), "total": args.total, "moduli": moduli}
        out["code"] = str(canonical_code_from_moduli(G, moduli)) if moduli else None
        return out, EXIT_OK
    gens = parse_subset(G, args.gens)
    H = subgroup_generated(G, gens.elements)
    S = subgroup_code_connection_set(G, H, args.total)
    return {
        "group": str(G),
        "subgroup": str(H),
        "code": str(H.as_subset()),
        "connection_set": str(S),
        "total": args.total,
    }, EXIT_OK


def cmd_goodness(args) -> tuple[dict, int]:
    G = _group(args)
    return {"group": str(G), **is_good_group(G).to_json()}, EXIT_OK


def cmd_theorem(args) -> tuple[dict, int]:
    G = _group(args)
    S = _subset(G, args.conn, "--conn")
    tid = args.id
    if tid == "circulant":
        return {"group": str(G), "connection_set": str(S), "verdict": check_circulant_tpc(G, S).to_json()}, EXIT_OK
    if tid == "all":
        ids = [t for t in CHECKERS if G.rank == 1 or not t.startswith("CTPC.")]
    elif tid in CHECKERS:
        ids = [tid]
    else:
        raise InputError(f"unknown theorem id {tid!r}; choose from {sorted(CHECKERS)}, all or circulant")
    verdicts = [CHECKERS[t][0](G, S).to_json() for t in ids]
    return {"group": str(G), "connection_set": str(S), "verdicts": verdicts}, EXIT_OK


def cmd_crossvalidate(args) -> tuple[dict, int]:
    theorems = tuple(args.theorem) if args.theorem else tuple(CHECKERS)
    for t in theorems:
        if t not in CHECKERS:
            raise InputError(f"unknown theorem id {t!r}")
    instances = []
    for group_text, conn_text in args.instance or ():
        G = parse_group(group_text)
        instances.append((G, parse_subset(G, conn_text)))
    sweep = not instances or args.max_cyclic is not None or args.max_two_factor is not None
    scope = CrossvalScope(
        max_cyclic_order=(args.max_cyclic if args.max_cyclic is not None else 20) if sweep else 0,
        max_two_factor_order=(args.max_two_factor if args.max_two_factor is not None else 16) if sweep else 0,
        theorems=theorems,
        instances=tuple(instances),
        seed=args.seed,
    )
    report = registry_crossvalidate(scope)
    out = report.to_json()
    out["clean"] = report.is_clean()
    out["scope"] = {
        "max_cyclic_order": scope.max_cyclic_order,
        "max_two_factor_order": scope.max_two_factor_order,
        "theorems": list(scope.theorems),
    }
    return out, EXIT_OK


def cmd_cyclotomic(args) -> tuple[dict, int]:
    if args.n is not None:
        if args.n < 1:
            raise InputError("n must be positive")
        poly = cyclotomic(args.n)
        return {"n": args.n, "coefficients": poly.to_json(), "polynomial": str(poly)}, EXIT_OK
    G = _group(args)
    S = _subset(G, args.conn, "--conn")
    if args.prime is None:
        raise InputError("give --n, or --prime (with --conn) for a divisibility profile")
    if not 0 <= args.coordinate < G.rank:
        raise InputError(f"coordinate must be in 0..{G.rank - 1}")
    profile = cyclotomic_divisibility_profile(S, args.coordinate, args.prime, args.l)
    return {
        "group": str(G),
        "subset": str(S),
        "coordinate": args.coordinate,
        "polynomial": str(subset_polynomial(S, args.coordinate)),
        "divides": {str(args.prime**j): v for j, v in profile.items()},
    }, EXIT_OK


COMMANDS: dict[str, Callable] = {
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "reduce": cmd_reduce,
    "lift": cmd_lift,
    "construct": cmd_construct,
    "goodness": cmd_goodness,
    "theorem": cmd_theorem,
    "crossvalidate": cmd_crossvalidate,
    "cyclotomic": cmd_cyclotomic,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cayley-codes", description="Perfect and total perfect codes in abelian Cayley graphs.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, conn=True, total=True):
        p.add_argument("--group", help='group literal, e.g. "6x4" or "42"')
        if conn:
            p.add_argument("--conn", help='connection set literal, e.g. "{1,5}"')
        if total:
            p.add_argument("--total", action="store_true", help="total perfect codes (S instead of S u {0})")
        p.add_argument("--format", choices=("json", "table"), default="json")

    def limits(p):
        p.add_argument("--max-order", type=int)
        p.add_argument("--max-nodes", type=int)
        p.add_argument("--time-budget-ms", type=int)
        p.add_argument("--mode", choices=MODES)
        p.add_argument("--config", help="JSON or TOML file with search limits")

    p = sub.add_parser("verify", help="check a candidate code")
    common(p)
    p.add_argument("--code")
    p = sub.add_parser("enumerate", help="list every code")
    common(p)
    limits(p)
    p = sub.add_parser("reduce", help="quotient by the periods of S u {0}")
    common(p)
    limits(p)
    p.add_argument("--solve", action="store_true", help="also enumerate reduced codes and count their lifts")
    p = sub.add_parser("lift", help="lift codes of the reduced instance")
    common(p, total=False)
    p.add_argument("--code", action="append", help="reduced code literal (repeatable)")
    p = sub.add_parser("construct", help="moduli construction, or a connection set for a subgroup code")
    common(p)
    p.add_argument("--gens", help="generators of the subgroup, as a subset literal")
    p = sub.add_parser("goodness", help="is the group good")
    common(p, conn=False, total=False)
    p = sub.add_parser("theorem", help="evaluate theorem checkers")
    common(p, total=False)
    p.add_argument("--id", default="all", help="theorem id, 'all', or 'circulant'")
    p = sub.add_parser("crossvalidate", help="compare theorem predictions with search")
    p.add_argument("--max-cyclic", type=int)
    p.add_argument("--max-two-factor", type=int)
    p.add_argument("--theorem", action="append")
    p.add_argument("--instance", nargs=2, action="append", metavar=("GROUP", "CONN"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p = sub.add_parser("cyclotomic", help="cyclotomic polynomials and divisibility profiles")
    common(p, total=False)
    p.add_argument("--n", type=int)
    p.add_argument("--prime", type=int)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--coordinate", type=int, default=0)
    return parser


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    lines = []
    width = max((len(k) for k in report), default=0)
    for key in sorted(report):
        value = report[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key.ljust(width)}  {value}")
    return "\n".join(lines)


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Execute one request; returns the exit status and the rendered report."""
    fmt = "table" if "--format=table" in argv or _follows(argv, "--format", "table") else "json"
    try:
        args = build_parser().parse_args(list(argv))
        if not args.command:
            raise InputError(f"missing command; choose from {', '.join(COMMANDS)}")
        report, code = COMMANDS[args.command](args)
        report = {"schema": SCHEMA, "command": args.command, **report}
    except InternalConsistencyError:
        raise
    except LimitExceeded as exc:
        report, code = {"schema": SCHEMA, "error": {"type": "limit-exceeded", "message": str(exc)}}, EXIT_LIMIT
    except (CayleyCodesError, ValueError, OverflowError) as exc:
        kind = "precondition" if type(exc).__name__ == "PreconditionError" else "input"
        report, code = {"schema": SCHEMA, "error": {"type": kind, "message": str(exc)}}, EXIT_INPUT
    return code, render(report, fmt)


def _follows(argv: Sequence[str], flag: str, value: str) -> bool:
    return any(a == flag and b == value for a, b in zip(argv, argv[1:]))


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code == EXIT_OK else sys.stderr
    if code == EXIT_LIMIT and "error" not in text:
        stream = sys.stdout  # partial results are still results
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
