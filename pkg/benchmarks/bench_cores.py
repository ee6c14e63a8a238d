"""Check counts and run times of the core algorithms, averaged over runs.

    python benchmarks/bench_cores.py [--runs 10] [spec.spc ...]

Reports actual realizability checks, memo hits and core computations for
each algorithm, and the percentage reductions of QuickCore over DDMin,
Punch over TD, and memoized over plain Punch.
"""

import argparse
import statistics
import time
from pathlib import Path

from gr1cores import Realizer, ddmin, parse_spec, punch_qc, punch_ud, reduce, run_quickcore
from gr1cores.punch import td_problem
from gr1cores.quickcore import unrealizability

SPECS = Path(__file__).resolve().parent.parent / "specs"


def single(problem, alg, memo):
    realizer = Realizer(problem)
    crit = unrealizability(realizer, memo=memo)
    if alg == "quickcore":
        run_quickcore(problem, realizer=realizer, crit=crit)
    else:
        ddmin(problem.guarantee_ids, crit)
    return crit.stats


ALGS = {
    "quickcore": lambda p, memo: single(p, "quickcore", memo),
    "ddmin": lambda p, memo: single(p, "ddmin", memo),
    "punch-qc": lambda p, memo: punch_qc(p, memo=memo).stats,
    "punch-ud": lambda p, memo: punch_ud(p, memo=memo).stats,
    "td": lambda p, memo: td_problem(p, memo=memo).stats,
}


def measure(problem, runs):
    rows = {}
    for name, fn in ALGS.items():
        for memo in (True, False):
            times, stats = [], None
            for _ in range(runs):
                t = time.perf_counter()
                stats = fn(problem, memo)
                times.append(time.perf_counter() - t)
            rows[(name, memo)] = (stats, statistics.mean(times))
    return rows


def reduction(rows, better, worse, memo=True):
    a = rows[(better, memo)][0].actual_checks
    b = rows[(worse, memo)][0].actual_checks
    return 100.0 * (b - a) / b if b else 0.0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("specs", nargs="*")
    ap.add_argument("--runs", type=int, default=10)
    args = ap.parse_args()
    paths = [Path(s) for s in args.specs] or [SPECS / "lift.spc", SPECS / "monitor.spc"]

    for path in paths:
        problem = reduce(parse_spec(path.read_text()))
        rows = measure(problem, args.runs)
        print(f"== {path.name} ({len(problem.guarantee_ids)} guarantee ids, "
              f"{args.runs} runs)")
        print(f"{'algorithm':>10} {'memo':>5} {'checks':>7} {'hits':>6} {'cores':>6} "
              f"{'sys_win':>7} {'mean ms':>9}")
        for (name, memo), (s, t) in rows.items():
            print(f"{name:>10} {'on' if memo else 'off':>5} {s.actual_checks:>7} "
                  f"{s.memo_hits:>6} {s.core_computations:>6} {s.syswin_checks:>7} "
                  f"{t * 1e3:>9.2f}")
        print(f"quickcore vs ddmin checks: {reduction(rows, 'quickcore', 'ddmin'):.0f}% fewer")
        print(f"punch-qc vs td checks:     {reduction(rows, 'punch-qc', 'td'):.0f}% fewer")
        print(f"punch-ud vs td checks:     {reduction(rows, 'punch-ud', 'td'):.0f}% fewer")
        plain = rows[("punch-ud", False)][0].actual_checks
        memo = rows[("punch-ud", True)][0].actual_checks
        print(f"punch-ud memo on vs off:   {100.0 * (plain - memo) / plain:.0f}% fewer")
        print()


if __name__ == "__main__":
    main()
