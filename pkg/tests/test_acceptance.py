"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary
(and to stdout when this file is run directly).
"""

import json
import random
import time

import pytest

from gr1cores import (
    Criterion,
    Realizer,
    brute_force_all_cores,
    ddmin,
    is_core,
    linear_min,
    memoize,
    min_with_base,
    punch,
    punch_qc,
    punch_ud,
    quickcore,
    quickxplain,
    run_quickcore,
    td_all_cores,
    winning_region,
)
from gr1cores.cli import main
from gr1cores.punch import td_problem
from gr1cores.quickcore import unrealizability

from conftest import LIFT_CORES, SPECS, lines, load
from oracles import ExplicitGame, gr1_oracle, random_monotone, random_spec_text

RESULTS = {}
SIX = sorted(sorted(c) for c in LIFT_CORES)


def record(key, ok, detail=""):
    RESULTS[key] = (ok, detail)
    assert ok, detail


def cli_json(capsys, *argv):
    code = main(["--format", "json", *argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def report_lines(report):
    return sorted(sorted(e["source_line"] for e in c) for c in report["cores"])


def test_1_lift_unrealizable(capsys):
    started = time.perf_counter()
    code = main(["check", str(SPECS / "lift.spc")])
    elapsed = time.perf_counter() - started
    out = capsys.readouterr().out
    ok = code == 1 and out.startswith("UNREALIZABLE") and elapsed < 1.0
    record("1", ok, f"exit={code} elapsed={elapsed:.3f}s (limit 1s)")


def test_2_lift_all_cores(capsys):
    details, ok = [], True
    for alg in ("punch-qc", "punch-ud"):
        started = time.perf_counter()
        code, rep = cli_json(capsys, "all-cores", "--alg", alg, str(SPECS / "lift.spc"))
        elapsed = time.perf_counter() - started
        inter = sorted(e["source_line"] for e in rep["intersection"])
        good = (code == 0 and rep["complete"] and report_lines(rep) == SIX and inter == [27]
                and elapsed < 10.0)
        ok &= good
        details.append(f"{alg}: {len(rep['cores'])} cores, intersection {inter}, "
                       f"{elapsed:.2f}s")
    code, rep = cli_json(capsys, "oracle", str(SPECS / "lift.spc"))
    ok &= code == 0 and report_lines(rep) == SIX
    details.append(f"oracle: {len(rep['cores'])} cores")
    record("2", ok, "; ".join(details))


def test_3_lift_quickcore(capsys, lift):
    code, rep = cli_json(capsys, "core", "--alg", "quickcore", str(SPECS / "lift.spc"))
    (got,) = report_lines(rep)
    ids = frozenset(lift.element(e["id"]) for e in rep["cores"][0])
    valid = is_core(ids, unrealizability(Realizer(lift), memo=False))
    ok = code == 0 and valid and set(got) in LIFT_CORES and got == [21, 27, 36]
    record("3", ok, f"core lines {got}, validator {'OK' if valid else 'FAILED'}")


def test_4_monitor_quickcore(capsys, monitor):
    started = time.perf_counter()
    code, rep = cli_json(capsys, "core", "--alg", "quickcore", str(SPECS / "monitor.spc"))
    elapsed = time.perf_counter() - started
    (got,) = report_lines(rep)
    naive_realizable = Realizer(monitor).is_realizable(None, monitor.ids_at_lines([8, 9]))
    ok = code == 0 and got == [4, 8, 9] and naive_realizable and elapsed < 1.0
    record("4", ok, f"core lines {got}; {{8,9}} alone realizable: {naive_realizable}; "
                    f"elapsed={elapsed:.3f}s (limit 1s)")


def test_5a_random_criteria():
    rng = random.Random(20240501)
    failures = []
    for k in range(200):
        universe, c, cores = random_monotone(rng, rng.randint(1, 10))
        oracle = brute_force_all_cores(universe, c)
        crit = memoize(c)
        res = punch(universe, (), crit,
                    lambda E, K: K | min_with_base(ddmin, E, K, E - K, crit))
        td = td_all_cores(universe, memoize(c))
        if not (res.core_set == td.core_set == oracle == cores):
            failures.append(f"#{k} core sets differ")
        if res.intersection != frozenset.intersection(*oracle):
            failures.append(f"#{k} top-level CI is not the intersection")
        for alg in (ddmin, quickxplain, linear_min):
            if not is_core(alg(universe, c), c):
                failures.append(f"#{k} {alg.__name__} output is not a core")
    record("5a", not failures, f"200 criteria, {len(failures)} failures {failures[:3]}")


def test_5b_random_gr1():
    rng = random.Random(7)
    failures, unreal = [], 0
    for k in range(100):
        p = load(random_spec_text(rng, max_vars=6, max_gars=8))
        r = Realizer(p)
        gars = sorted(p.guarantee_ids)
        # monotonicity along three random chains
        for _ in range(3):
            order = rng.sample(gars, len(gars))
            flags = [not r.is_realizable(None, order[:i]) for i in range(len(order) + 1)]
            if any(a and not b for a, b in zip(flags, flags[1:])):
                failures.append(f"#{k} monotonicity")
        g = r.game()
        mine = {ExplicitGame.key(s) for s in g.space.states(winning_region(g))}
        win, ok = gr1_oracle(r.modules())
        if mine != win or ok != r.is_realizable():
            failures.append(f"#{k} winning region")
        if not ok:
            unreal += 1
            core = quickcore(p, realizer=r)
            fresh = Realizer(p)
            oracle = brute_force_all_cores(p.guarantee_ids,
                                           lambda s: not fresh.is_realizable(None, s))
            if not is_core(core, unrealizability(Realizer(p), memo=False)) or core not in oracle:
                failures.append(f"#{k} quickcore")
    record("5b", not failures,
           f"100 problems ({unreal} unrealizable), {len(failures)} failures {failures[:3]}")


def _outputs(p, memo):
    r = Realizer(p)
    out = {"quickcore": quickcore(p, memo=memo)}
    for name, alg in (("ddmin", ddmin), ("quickxplain", quickxplain), ("linear", linear_min)):
        out[name] = alg(p.guarantee_ids, unrealizability(r, memo=memo))
    for name, fn in (("punch-qc", punch_qc), ("punch-ud", punch_ud), ("td", td_problem)):
        res = fn(p, memo=memo)
        out[name] = (sorted(map(sorted, res.cores)), res.intersection)
    return out


def test_5c_memo_transparency():
    problems = [load(n) for n in ("lift.spc", "monitor.spc", "justice_free.spc")]
    rng = random.Random(11)
    while len(problems) < 23:
        p = load(random_spec_text(rng))
        if not Realizer(p).is_realizable():
            problems.append(p)
    diffs = [i for i, p in enumerate(problems) if _outputs(p, True) != _outputs(p, False)]
    record("5c", not diffs, f"{len(problems)} problems x 7 algorithms, differing: {diffs}")


class _Logging(Realizer):
    def __init__(self, problem):
        super().__init__(problem)
        self.log = []

    def is_realizable(self, asm_ids=None, gar_ids=None):
        self.log.append((asm_ids, gar_ids))
        return super().is_realizable(asm_ids, gar_ids)


def test_5d_justice_drop():
    checked, else_fixtures, mismatches = 0, [], []
    for path in sorted(SPECS.glob("*.spc")):
        p = load(path.name)
        if Realizer(p).is_realizable():
            continue
        r = _Logging(p)
        run = run_quickcore(p, realizer=r)
        if run.justice_needed:
            continue
        else_fixtures.append(path.name)
        fresh = Realizer(p)
        for asm, gar in r.log:
            if asm is not None and frozenset(asm) != p.assumption_ids:
                checked += 1
                if fresh.is_realizable(asm, gar) != fresh.is_realizable(None, gar):
                    mismatches.append((path.name, sorted(lines(gar))))
        for ids, wins in run.stage3_trials:
            checked += 1
            if wins != fresh.is_realizable(None, ids):
                mismatches.append((path.name, sorted(lines(ids))))
    ok = bool(else_fixtures) and checked > 0 and not mismatches
    record("5d", ok, f"else-branch fixtures {else_fixtures}, {checked} queries compared, "
                     f"mismatches {mismatches}")


def test_6_stats(capsys):
    spec = str(SPECS / "lift.spc")
    _, qc = cli_json(capsys, "core", "--alg", "quickcore", spec)
    _, dd = cli_json(capsys, "core", "--alg", "ddmin", spec)
    _, pqc = cli_json(capsys, "all-cores", "--alg", "punch-qc", spec)
    _, pud = cli_json(capsys, "all-cores", "--alg", "punch-ud", spec)
    _, td = cli_json(capsys, "all-cores", "--alg", "td", spec)
    _, pud_plain = cli_json(capsys, "--no-memo", "all-cores", "--alg", "punch-ud", spec)
    qc_checks, dd_checks = qc["stats"]["actual_checks"], dd["stats"]["actual_checks"]
    comps = (pqc["stats"]["core_computations"], pud["stats"]["core_computations"])
    ok = qc_checks > 0 and dd_checks > 0 and comps == (6, 6)

    def pct(a, b):
        return f"{100.0 * (b - a) / b:.0f}%" if b else "n/a"

    checks = {k: r["stats"]["actual_checks"] for k, r in
              (("punch-qc", pqc), ("punch-ud", pud), ("td", td), ("punch-ud --no-memo", pud_plain))}
    detail = (f"quickcore checks={qc_checks} (+{qc['stats']['syswin_checks']} sys_win), "
              f"ddmin checks={dd_checks} ({pct(qc_checks, dd_checks)} fewer); "
              f"compute_core runs PQC={comps[0]} PUD={comps[1]}; all-cores checks {checks}; "
              f"PUD memo saves {pct(checks['punch-ud'], checks['punch-ud --no-memo'])}, "
              f"PQC vs TD {pct(checks['punch-qc'], checks['td'])}")
    record("6", ok, detail)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
