"""Command line driver: ``forbconf gen | contains | forb | verify``.

Exit codes: 0 success or contained, 1 negative result, 2 usage or parse
error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .constructions import ConstructionSpec
from .containment import contains_configuration
from .matrix import BinaryMatrix, parse, parse_literal, serialize
from .solver import Budget, bounds_report, default_threads, max_avoid_exact
from .verify import SUITES, run_suite

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def load_matrix(arg: str) -> BinaryMatrix:
    """A ``.bm`` path, a construction spec ``name:key=val,...``, or an inline ``110/101`` literal."""
    path = Path(arg)
    if path.is_file():
        return parse(path.read_text())
    if ":" in arg:
        return ConstructionSpec.parse(arg).build()
    return parse_literal(arg)


def _emit(record: dict, as_json: bool, head: str) -> None:
    if as_json:
        print(json.dumps(record))
    else:
        print(" ".join([head] + [f"{k}={v}" for k, v in record.items()]))


def cmd_gen(args) -> int:
    spec = ConstructionSpec.parse(args.spec)
    if spec.name == "f":
        _emit({"m": spec.params["m"], "k": spec.params["k"], "value": spec.evaluate()}, args.json, "f")
        return EXIT_OK
    a = spec.build()
    summary = f"{a.num_rows} {a.num_cols} {'simple' if a.is_simple() else 'not-simple'}"
    if args.out:
        Path(args.out).write_text(serialize(a))
        print(summary)
    else:
        sys.stdout.write(serialize(a))
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_contains(args) -> int:
    f_mat, a_mat = load_matrix(args.F), load_matrix(args.A)
    w = contains_configuration(a_mat, f_mat)
    if args.json:
        rec = {"contained": w is not None}
        if w is not None:
            rec["rows"] = [r + 1 for r in w.row_map]
            rec["columns"] = [c + 1 for c in w.column_assignment]
        print(json.dumps(rec))
    elif w is None:
        print("absent")
    else:
        print("contained")
        print(w.describe())
    return EXIT_OK if w is not None else EXIT_NEGATIVE


def cmd_forb(args) -> int:
    family = [load_matrix(x) for x in args.family]
    if args.mode == "exact":
        budget = None
        if args.budget_nodes or args.budget_seconds:
            budget = Budget(nodes=args.budget_nodes, seconds=args.budget_seconds)
        res = max_avoid_exact(args.m, family, budget=budget, threads=args.threads, theorem_cap=args.theorem_cap)
        prov = "theorem-cap" if res.capped else ("exhaustive" if res.exact else "search")
        rec = {
            "m": args.m,
            "value": res.value,
            "status": res.status,
            "lower": res.value,
            "upper": res.value if res.exact else 1 << args.m,
            "provenance": prov,
            "nodes": res.stats.nodes,
            "seconds": round(res.stats.wall_time, 3),
        }
        if args.out:
            Path(args.out).write_text(serialize(res.witness))
        _emit(rec, args.json, "forb")
        return EXIT_OK if res.exact else EXIT_BUDGET
    rep = bounds_report(args.m, family)
    rec = {
        "m": args.m,
        "value": rep.exact if rep.exact is not None else "none",
        "status": "exact" if rep.exact is not None else "interval",
        "lower": rep.lower.value,
        "upper": rep.upper.value,
        "provenance": f"{rep.lower.provenance};{rep.upper.provenance}",
        "family": rep.family_id,
    }
    _emit(rec, args.json, "forb")
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = run_suite(args.suite)
    if args.json:
        print(json.dumps(rep.as_dict()))
    else:
        print(rep.render())
    return EXIT_OK if rep.passed else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="forbconf", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a construction as a .bm matrix")
    g.add_argument("spec", help='e.g. "A_k:m=6,k=4", "named:tag=F_3", "boundary:i=3,k=4"')
    g.add_argument("--out")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("contains", help="decide whether F is a configuration of A")
    c.add_argument("F")
    c.add_argument("A")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_contains)

    fb = sub.add_parser("forb", help="exact search or bound report for forb(m, family)")
    fb.add_argument("--m", type=int, required=True)
    fb.add_argument("family", nargs="+", help="one or more forbidden matrices")
    fb.add_argument("--mode", choices=("exact", "bounds"), default="exact")
    fb.add_argument("--budget-nodes", type=int)
    fb.add_argument("--budget-seconds", type=float)
    fb.add_argument("--threads", type=int, default=default_threads())
    fb.add_argument("--theorem-cap", action="store_true", help="stop once f(m,k) is reached when the pair hypothesis holds")
    fb.add_argument("--out", help="write the extremal witness as .bm")
    fb.add_argument("--json", action="store_true")
    fb.set_defaults(func=cmd_forb)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
