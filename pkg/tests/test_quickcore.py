import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gr1cores import (
    RealizableError,
    Realizer,
    brute_force_all_cores,
    is_core,
    quickcore,
    quickcore_with_base,
    run_quickcore,
)
from gr1cores.minimize import PreconditionError
from gr1cores.quickcore import stage, unrealizability

from conftest import LIFT_CORES, lines, load
from oracles import random_spec_text

ELSE_BRANCH = ("env boolean x;\nsys boolean y;\nasm alwEv x;\nasm alwEv !x;\n"
               "gar ini false;\ngar alwEv y;\ngar alw next(y) | y;\n")


class LoggingRealizer(Realizer):
    """Records every realizability query as (assumptions, guarantees)."""

    def __init__(self, problem):
        super().__init__(problem)
        self.log = []

    def is_realizable(self, asm_ids=None, gar_ids=None):
        asm = self.problem.assumption_ids if asm_ids is None else frozenset(asm_ids)
        gar = self.problem.guarantee_ids if gar_ids is None else frozenset(gar_ids)
        self.log.append((asm, gar))
        return super().is_realizable(asm, gar)


def oracle_cores(p):
    r = Realizer(p)
    return brute_force_all_cores(p.guarantee_ids, lambda g: not r.is_realizable(None, g))


def test_lift(lift):
    run = run_quickcore(lift)
    assert lines(run.core) == {21, 27, 36}
    assert run.justice_needed
    assert is_core(run.core, unrealizability(Realizer(lift)))


def test_monitor(monitor):
    core = quickcore(monitor)
    assert lines(core) == {4, 8, 9}
    assert {i.origin for i in core} == {"monitor-internal", "declared"}


def test_else_branch():
    p = load(ELSE_BRANCH)
    r = LoggingRealizer(p)
    run = run_quickcore(p, realizer=r)
    assert not run.justice_needed
    assert lines(run.core) == {5}
    assert all(i.kind != "alwEv" for i in run.asm_ids)
    assert oracle_cores(p) == {run.core}


def test_justice_drop_equivalence():
    for text in (ELSE_BRANCH, ELSE_BRANCH.replace("gar ini false;", "gar ini y;\ngar alw !next(y);")):
        p = load(text)
        r = LoggingRealizer(p)
        run = run_quickcore(p, realizer=r)
        assert not run.justice_needed
        dropped = [(a, g) for a, g in r.log if a != p.assumption_ids]
        assert dropped
        fresh = Realizer(p)
        for asm, gar in dropped:
            assert fresh.is_realizable(asm, gar) == fresh.is_realizable(None, gar)


@pytest.mark.parametrize("name", ["lift.spc", "monitor.spc"])
def test_stage3_equivalence(name):
    p = load(name)
    run = run_quickcore(p)
    assert run.stage3_trials
    fresh = Realizer(p)
    for ids, wins in run.stage3_trials:
        assert wins == fresh.is_realizable(run.asm_ids, ids)


def test_realizable_input():
    p = load("env boolean x;\nsys boolean y;\ngar alwEv y;\n")
    with pytest.raises(RealizableError):
        quickcore(p)


def test_with_base_empty(lift):
    assert quickcore_with_base(lift, (), lift.guarantee_ids) == quickcore(lift)


def test_with_base_27(lift):
    base = lift.ids_at_lines([27])
    extra = quickcore_with_base(lift, base, lift.guarantee_ids - base)
    assert len(extra) == 2
    assert set(lines(base | extra)) in LIFT_CORES


def test_with_base_full_core(lift):
    base = lift.ids_at_lines([21, 27, 36])
    assert quickcore_with_base(lift, base, lift.guarantee_ids - base) == frozenset()


def test_with_base_errors(lift):
    base = lift.ids_at_lines([27])
    with pytest.raises(PreconditionError):
        quickcore_with_base(lift, base, lift.guarantee_ids)
    with pytest.raises(RealizableError):
        quickcore_with_base(lift, base, lift.ids_at_lines([24]))


def test_staging_of_kinds():
    p = load("env boolean x;\nsys boolean y;\nmonitor boolean m { ini m; alw next(m) = x; }\n"
             "gar ini y;\ngar alw y;\ngar alwEv y;\ngar respondsTo(x, y);\n")
    assert sorted(stage(i) for i in p.guarantee_ids) == sorted(
        ["ini", "safety", "ini", "safety", "justice", "justice"])


def test_memo_transparency(lift, monitor):
    for p in (lift, monitor, load(ELSE_BRANCH)):
        assert quickcore(p, memo=True) == quickcore(p, memo=False)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_problems(seed):
    p = load(random_spec_text(random.Random(seed)))
    r = Realizer(p)
    if r.is_realizable():
        with pytest.raises(RealizableError):
            quickcore(p)
        return
    core = quickcore(p, realizer=r)
    assert is_core(core, unrealizability(Realizer(p), memo=False))
    assert core in oracle_cores(p)
    assert quickcore(p, memo=False) == core
