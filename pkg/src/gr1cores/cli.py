"""Command-line interface.

Exit codes: 0 success (``check``: realizable), 1 unrealizable (``check``) or
failed validation, 2 input error, 3 core requested for a realizable spec,
4 timeout (partial report is still printed).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .minimize import ALGORITHMS, is_core
from .punch import UniverseTooLarge, brute_force_all_cores, punch_qc, punch_ud, td_problem
from .quickcore import RealizableError, run_quickcore, unrealizability
from .reduction import Gr1Problem, reduce
from .report import format_text, make_report
from .solver import Realizer
from .symbolic import StateSpaceTooLarge
from .syntax import SpecError, parse_spec

EXIT_OK, EXIT_UNREALIZABLE, EXIT_INPUT, EXIT_REALIZABLE, EXIT_TIMEOUT = 0, 1, 2, 3, 4

ALL_CORES = {"punch-qc": punch_qc, "punch-ud": punch_ud, "td": td_problem}


def load(path: str) -> Gr1Problem:
    with open(path, encoding="utf-8") as fh:
        return reduce(parse_spec(fh.read()))


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("text", "json"), default=default("text"))
    parser.add_argument("--no-memo", action="store_true", default=default(False),
                        help="disable memoization of criterion checks")
    parser.add_argument("--stats", action="store_true", default=default(False),
                        help="print check statistics in text mode")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gr1cores",
                                     description="GR(1) realizability and unrealizable cores")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="report realizability")
    p.add_argument("spec")
    _common(p, suppress=True)

    p = sub.add_parser("core", help="compute one unrealizable core")
    p.add_argument("--alg", choices=("quickcore",) + tuple(ALGORITHMS), default="quickcore")
    p.add_argument("spec")
    _common(p, suppress=True)

    p = sub.add_parser("all-cores", help="compute all unrealizable cores")
    p.add_argument("--alg", choices=tuple(ALL_CORES), default="punch-qc")
    p.add_argument("--timeout-secs", type=float, default=600.0)
    p.add_argument("spec")
    _common(p, suppress=True)

    p = sub.add_parser("oracle", help="all cores by exhaustive enumeration")
    p.add_argument("spec")
    _common(p, suppress=True)

    p = sub.add_parser("validate", help="re-check the cores of a JSON report")
    p.add_argument("spec")
    p.add_argument("report")
    _common(p, suppress=True)
    return parser


def _emit(args, report: dict) -> None:
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(format_text(report, args.stats))


def _check(args, problem):
    started = time.monotonic()
    realizer = Realizer(problem)
    ok = realizer.is_realizable()
    report = make_report(problem, realizable=ok, algorithm="check",
                         elapsed=time.monotonic() - started)
    report["stats"]["actual_checks"] = 1
    _emit(args, report)
    return EXIT_OK if ok else EXIT_UNREALIZABLE


def _core(args, problem):
    started = time.monotonic()
    realizer = Realizer(problem)
    crit = unrealizability(realizer, memo=not args.no_memo)
    if args.alg == "quickcore":
        core = run_quickcore(problem, realizer=realizer, crit=crit).core
    else:
        if not crit(problem.guarantee_ids):
            raise RealizableError("specification is realizable; it has no unrealizable core")
        core = ALGORITHMS[args.alg](problem.guarantee_ids, crit)
    crit.stats.core_computations = 1
    _emit(args, make_report(problem, realizable=False, algorithm=args.alg, cores=[core],
                            stats=crit.stats, elapsed=time.monotonic() - started))
    return EXIT_OK


def _all_cores(args, problem):
    res = ALL_CORES[args.alg](problem, memo=not args.no_memo, timeout=args.timeout_secs)
    _emit(args, make_report(problem, realizable=False, algorithm=args.alg, cores=res.cores,
                            intersection=res.intersection, complete=res.complete,
                            stats=res.stats, elapsed=res.elapsed))
    return EXIT_OK if res.complete else EXIT_TIMEOUT


def _oracle(args, problem):
    started = time.monotonic()
    realizer = Realizer(problem)
    if realizer.is_realizable():
        raise RealizableError("specification is realizable; it has no unrealizable core")
    cores = brute_force_all_cores(problem.guarantee_ids,
                                  lambda g: not realizer.is_realizable(None, g))
    inter = frozenset.intersection(*cores) if cores else frozenset()
    report = make_report(problem, realizable=False, algorithm="oracle", cores=cores,
                         intersection=inter, elapsed=time.monotonic() - started)
    report["stats"]["actual_checks"] = realizer.calls
    _emit(args, report)
    return EXIT_OK


def _validate(args, problem):
    with open(args.report, encoding="utf-8") as fh:
        report = json.load(fh)
    realizer = Realizer(problem)
    crit = unrealizability(realizer, memo=False)
    all_ok = True
    for n, core in enumerate(report["cores"], 1):
        ids = frozenset(problem.element(e["id"]) for e in core)
        ok = is_core(ids, crit)
        all_ok &= ok
        lines = ", ".join(str(i.line) for i in sorted(ids))
        print(f"core {n} (lines {lines}): {'OK' if ok else 'NOT A CORE'}")
    return EXIT_OK if all_ok else EXIT_UNREALIZABLE


COMMANDS = {"check": _check, "core": _core, "all-cores": _all_cores,
            "oracle": _oracle, "validate": _validate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        problem = load(args.spec)
        return COMMANDS[args.command](args, problem)
    except SpecError as e:
        sep = ":" if e.line else ": "
        print(f"{args.spec}{sep}{e}", file=sys.stderr)
        return EXIT_INPUT
    except RealizableError as e:
        print(f"{args.spec}: {e}", file=sys.stderr)
        return EXIT_REALIZABLE
    except (OSError, StateSpaceTooLarge, UniverseTooLarge, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
