"""Command-line front end.

Exit status: 0 on success (or when every check passes), 1 when a verification
fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .corpus import CorpusError, bundled_corpus, find_entry, load_pd_batch
from .diagram import DiagramError, LinkDiagram, default_orientation, parse_braid
from .expansion import RuleTable, default_rule_table, state_values, table_from_json, verify_identity
from .homfly import evaluate_homfly
from .kauffman import evaluate_kauffman
from .laurent import RationalFunction

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
JOBS_ENV = "LINKPOLY_JOBS"


class InputError(Exception):
    pass


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _add_input(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--pd", metavar="FILE", help="PD code file (one diagram per line)")
    g.add_argument("--braid", metavar="WORD", help="braid word, e.g. 'BR 2 : 1 1 1'")
    g.add_argument("--name", metavar="ENTRY", help="bundled corpus entry")


def _inputs(args) -> list[tuple[str, LinkDiagram]]:
    try:
        if args.pd:
            items = load_pd_batch(args.pd)
            if not items:
                raise InputError(f"{args.pd}: no diagrams found")
            return items
        if args.braid:
            return [(args.braid.strip(), parse_braid(args.braid))]
        if args.name:
            return [(args.name, find_entry(args.name).diagram())]
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except KeyError as exc:
        raise InputError(exc.args[0]) from exc
    except (DiagramError, CorpusError) as exc:
        raise InputError(str(exc)) from exc
    raise InputError("no input given")


def _table(args) -> RuleTable:
    if getattr(args, "table", None):
        try:
            return table_from_json(Path(args.table).read_text())
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"cannot load rule table {args.table}: {exc}") from exc
    return default_rule_table(args.family)


def _value_json(name: str, v: RationalFunction, **extra) -> dict:
    out = {"name": name, "value": str(v)}
    out.update(v.to_json())
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# subcommands


def run_compute(args) -> int:
    rows = []
    for name, d in _inputs(args):
        if args.invariant == "homfly":
            v = evaluate_homfly(default_orientation(d))
        else:
            v = evaluate_kauffman(d)
        if args.specialize is not None:
            v = v.substitute_a(args.specialize)
        rows.append((name, v))
    if args.format == "json":
        objs = [_value_json(n, v, invariant=args.invariant, specialize=args.specialize) for n, v in rows]
        print(json.dumps(objs[0] if len(objs) == 1 else objs, indent=2))
    else:
        for n, v in rows:
            print(v if len(rows) == 1 else f"{n}: {v}")
    return EXIT_OK


def run_expand(args) -> int:
    t = _table(args)
    jobs = args.jobs or _default_jobs()
    results = []
    for name, d in _inputs(args):
        rows = state_values(d, t, jobs=jobs)
        total = RationalFunction(0)
        for _, v in rows:
            total = total + v
        results.append((name, rows, total))
    if args.format == "json":
        objs = []
        for name, rows, total in results:
            obj = _value_json(name, total, family=t.family, states=len(rows))
            if args.states:
                obj["state_rows"] = [{"choice": [p.name for p in s.choice], "loops": list(s.loop_choices),
                                      "weight": str(s.weight), "rot": s.rotation, "value": str(v)}
                                     for s, v in rows]
            objs.append(obj)
        print(json.dumps(objs[0] if len(objs) == 1 else objs, indent=2))
        return EXIT_OK
    for name, rows, total in results:
        if len(results) > 1:
            print(f"# {name}")
        if args.states:
            for s, v in rows:
                choice = " ".join(p.name for p in s.choice) or "-"
                loops = " ".join({1: "ccw", -1: "cw", 0: "erased"}[o] for o in s.loop_choices) or "-"
                print(f"state [{choice}] loops [{loops}] weight {s.weight} rot {s.rotation} value {v}")
        print(total)
    return EXIT_OK


def run_verify(args) -> int:
    t = _table(args)
    jobs = args.jobs or _default_jobs()
    if args.all:
        items = [(e.name, e.diagram()) for e in bundled_corpus()]
    else:
        items = _inputs(args)
    if jobs > 1 and len(items) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            reports = list(pool.map(verify_identity, [d for _, d in items], [t] * len(items)))
    else:
        reports = [verify_identity(d, t) for _, d in items]
    lines, objs = [], []
    failed = False
    informational = t.family == "bn"
    for (name, _), r in zip(items, reports):
        status = "PASS" if r.equal else "FAIL"
        line = f"{status} {name} family={r.family} states={r.states} time={r.seconds:.3f}s"
        if r.specialized:
            marks = " ".join(f"n={n}:{'PASS' if ok else 'FAIL'}" for n, ok in r.specialized.items())
            line += f" specialized[{marks}]"
        if informational:
            line += " (informational)"
        lines.append(line)
        if not r.equal:
            lines.append(f"    expansion: {r.expansion}")
            lines.append(f"    kauffman:  {r.kauffman}")
        objs.append(dict(r.to_json(), name=name))
        failed |= not r.equal and not informational
    for line in lines:
        print(line)
    if args.report:
        try:
            if args.report_format == "json":
                Path(args.report).write_text(json.dumps(objs, indent=2) + "\n")
            else:
                Path(args.report).write_text("\n".join(lines) + "\n")
        except OSError as exc:
            raise InputError(f"cannot write report: {exc}") from exc
    return EXIT_FAIL if failed else EXIT_OK


def run_oracle(args) -> int:
    from .oracle import main as oracle_main

    return oracle_main([args.path] if args.path else [])


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linkpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print the HOMFLY-PT or Kauffman polynomial")
    p.add_argument("invariant", choices=("homfly", "kauffman"))
    _add_input(p)
    p.add_argument("--specialize", type=int, metavar="N", help="substitute a = q^N")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=run_compute)

    for cmd, func, help_text in (("expand", run_expand, "evaluate the state expansion"),
                                 ("verify", run_verify, "compare the state expansion with the Kauffman polynomial")):
        p = sub.add_parser(cmd, help=help_text)
        _add_input(p, required=cmd == "expand")
        if cmd == "verify":
            p.add_argument("--all", action="store_true", help="every bundled corpus entry")
            p.add_argument("--report", metavar="PATH")
            p.add_argument("--report-format", choices=("text", "json"), default="text")
        p.add_argument("--family", choices=("dn", "bn"), default="dn")
        p.add_argument("--table", metavar="JSON", help="rule table file replacing the shipped one")
        p.add_argument("--jobs", type=int, default=0, metavar="N",
                       help=f"worker processes (default ${JOBS_ENV} or 1)")
        if cmd == "expand":
            p.add_argument("--states", action="store_true", help="print one row per state")
            p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(func=func)

    p = sub.add_parser("oracle", help="recompute the frozen corpus values")
    p.add_argument("path", nargs="?")
    p.set_defaults(func=run_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and not args.all and not (args.pd or args.braid or args.name):
        parser.error("verify needs --all or an input (--pd, --braid, --name)")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
