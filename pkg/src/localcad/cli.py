"""Command-line front end.

    localcad problem.txt --emit caf --emit stats --check 10000
    localcad --example example1 --method cad-mc --emit stats

Exit codes: 0 success, 2 usage error, 3 parse error, 4 resource limit,
5 internal assertion, 6 oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cadbase import HONG, MCCALLUM, cad_solve
from .formula import ResourceLimit, caf_str, caf_to_json
from .lpcad import Options, solve
from .oracle import oracle_check
from .parser import ParseError, parse_problem
from .problems import CORPUS

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_RESOURCE = 4
EXIT_INTERNAL = 5
EXIT_ORACLE = 6

METHODS = ("lpcad", "cad-mc", "cad-hong", "lpcad-hong-only")
EMITS = ("caf", "json", "stats", "trace")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="localcad", description="Cylindrical decomposition of a real polynomial system.")
    ap.add_argument("problem", nargs="?", help="problem file, or - for stdin")
    ap.add_argument("--example", choices=sorted(CORPUS), help="use a built-in system instead of a file")
    ap.add_argument("--method", choices=METHODS, default=None)
    ap.add_argument("--emit", action="append", choices=EMITS, help="output to print (repeatable, default caf)")
    ap.add_argument("--check", type=int, default=0, metavar="N", help="compare system and result on N sample points")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-skip-levels", action="store_true", help="always project down to level 1")
    ap.add_argument("--max-steps", type=int, default=10 ** 6, help="interval budget per stack loop")
    ap.add_argument("--max-nf-atoms", type=int, default=100_000, help="size cap for the CNF/DNF of the system")
    ap.add_argument("--no-time", action="store_true", help="omit wall time from JSON output")
    return ap


def _load(args):
    if args.example:
        vars, system = CORPUS[args.example]()
        return vars, system, {}
    if args.problem == "-":
        text = sys.stdin.read()
    else:
        with open(args.problem, encoding="utf-8") as fh:
            text = fh.read()
    prob = parse_problem(text)
    return prob.vars, prob.system, prob.options


def _trace_printer(out):
    def emit(event):
        truth = event["truth"]
        truth = "sub" if truth is None else str(truth).lower()
        print(
            f"trace level={event['k'] + 1} interval={event['interval']} sample={event['sample']} "
            f"by={event['source']} witnesses={event['witnesses']} value={truth}",
            file=out,
        )

    return emit


def run(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        vars, system, file_opts = _load(args)
    except ParseError as e:
        print(f"parse error: {e}", file=err)
        return EXIT_PARSE
    except OSError as e:
        print(f"cannot read problem: {e}", file=err)
        return EXIT_USAGE

    method = args.method or file_opts.get("method", "lpcad")
    if method not in METHODS:
        print(f"unknown method {method!r}", file=err)
        return EXIT_USAGE
    emits = args.emit or ["caf"]
    options = Options(
        skip_levels=not args.no_skip_levels,
        hong_only=method == "lpcad-hong-only",
        max_steps=args.max_steps,
        max_nf_atoms=args.max_nf_atoms,
        trace=_trace_printer(out) if "trace" in emits else None,
    )
    try:
        if method.startswith("lpcad"):
            F, stats = solve(system, vars, options)
        else:
            F, stats = cad_solve(system, vars, MCCALLUM if method == "cad-mc" else HONG)
    except ResourceLimit as e:
        print(f"resource limit: {e}", file=err)
        return EXIT_RESOURCE
    except (AssertionError, RecursionError) as e:
        print(f"internal error: {type(e).__name__}: {e}", file=err)
        return EXIT_INTERNAL

    with_time = not args.no_time
    if "caf" in emits:
        print(caf_str(F, vars), file=out)
    if "stats" in emits:
        d = stats.to_dict(with_time)
        levels = " ".join(f"{x['k']}:{x['proj_size']}" for x in d["levels"])
        print(
            f"method={d['method']} cells={d['cells']} atomic_cells={d['atomic_cells']} "
            f"true_cells={d['true_cells']} iterations={d['iterations']} wo={d['well_oriented']} "
            f"levels=[{levels}]" + (f" time_ms={d['time_ms']}" if with_time else ""),
            file=out,
        )
    if "json" in emits:
        doc = {"vars": list(vars.names), "stats": stats.to_dict(with_time), "formula": caf_to_json(F)}
        print(json.dumps(doc, sort_keys=True), file=out)

    if args.check:
        report = oracle_check(system, F, vars, args.check, args.seed)
        print(report, file=out)
        if not report.passed:
            return EXIT_ORACLE
    return EXIT_OK


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if (args.problem is None) == (args.example is None):
        ap.print_usage(sys.stderr)
        print("give exactly one of a problem file or --example", file=sys.stderr)
        return EXIT_USAGE
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
