"""Staged unrealizable-core computation: justices, then safeties, then initials.

Initial guarantees are minimized against a single winning region, since
the winning region does not depend on initial assertions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .minimize import Criterion, MemoCache, PreconditionError, ddmin, min_with_base
from .reduction import Gr1Problem
from .solver import Realizer, sys_win, winning_region

STAGE_OF_KIND = {"ini": "ini", "alw": "safety", "alwEv": "justice", "pattern": "justice"}


class RealizableError(PreconditionError):
    """Core computation was asked for on a realizable specification."""


def stage(eid) -> str:
    return STAGE_OF_KIND[eid.kind]


def unrealizability(realizer: Realizer, asm_ids: Optional[Iterable] = None,
                    memo: bool = True, stats=None, deadline=None) -> Criterion:
    """Criterion over guarantee-ID sets: the projected spec is unrealizable."""
    asm = realizer.problem.assumption_ids if asm_ids is None else frozenset(asm_ids)
    return Criterion(lambda gar: not realizer.is_realizable(asm, gar),
                     MemoCache() if memo else None, stats, deadline)


@dataclass
class QuickCoreRun:
    core: frozenset  # the minimized part of the input set
    justice_needed: bool
    asm_ids: frozenset  # assumptions in force after stage 1
    stage3_trials: list = field(default_factory=list)  # (gar ids, sys wins)


def run_quickcore(problem: Gr1Problem, base: Iterable = (), subset: Optional[Iterable] = None,
                  *, realizer: Optional[Realizer] = None, crit: Optional[Criterion] = None,
                  memo: bool = True) -> QuickCoreRun:
    realizer = realizer or Realizer(problem)
    asm = problem.assumption_ids
    if crit is None:
        crit = unrealizability(realizer, asm, memo=memo)
    base = frozenset(base)
    subset = problem.guarantee_ids - base if subset is None else frozenset(subset)
    if base & subset:
        raise PreconditionError("base and minimized set overlap")
    universe = base | subset
    if not crit(universe):
        raise RealizableError("specification is realizable; it has no unrealizable core")

    ini = frozenset(x for x in subset if stage(x) == "ini")
    safety = frozenset(x for x in subset if stage(x) == "safety")
    justice = frozenset(x for x in subset if stage(x) == "justice")

    # stage 1: justices
    justice_needed = not crit(base | ini | safety)
    if justice_needed:
        j_core = min_with_base(ddmin, universe, base | ini | safety, justice, crit)
    else:
        j_core = frozenset()
        # env justices cannot matter once no sys justice is left
        if not any(stage(x) == "justice" for x in base):
            asm = frozenset(x for x in asm if stage(x) != "justice")
            kept_asm = asm
            crit = crit.rebind(lambda gar: not realizer.is_realizable(kept_asm, gar))

    # stage 2: safeties
    t_core = min_with_base(ddmin, universe, base | ini | j_core, safety, crit)

    # stage 3: initials, one winning region for all trials
    run = QuickCoreRun(frozenset(), justice_needed, asm)
    fixed = base | t_core | j_core
    game = realizer.game(asm, fixed | ini)
    w = winning_region(game)
    i_core = sorted(ini)
    for i in sorted(ini):
        trial = [x for x in i_core if x != i]
        ids = fixed | frozenset(trial)
        crit.stats.syswin_checks += 1
        wins = sys_win(game.theta_e, realizer.initial_states(game, ids), w)
        run.stage3_trials.append((ids, wins))
        if crit.memo is not None:
            crit.memo.add(ids, not wins)
        if not wins:
            i_core = trial
    run.core = frozenset(i_core) | t_core | j_core
    return run


def quickcore(problem: Gr1Problem, **kwargs) -> frozenset:
    """A locally minimal set of guarantee IDs that keeps ``problem`` unrealizable."""
    return run_quickcore(problem, **kwargs).core


def quickcore_with_base(problem: Gr1Problem, base: Iterable, subset: Iterable,
                        **kwargs) -> frozenset:
    """Minimal A' within ``subset`` with ``base | A'`` unrealizable."""
    return run_quickcore(problem, base, subset, **kwargs).core
