"""All-cores enumeration: Punch, its two GR(1) instantiations, and baselines."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .minimize import (
    CheckStats,
    Criterion,
    Deadline,
    PreconditionError,
    Timeout,
    as_criterion,
    ddmin,
    min_with_base,
)
from .quickcore import RealizableError, run_quickcore, unrealizability
from .reduction import Gr1Problem
from .solver import Realizer

BRUTE_FORCE_LIMIT = 16


class UniverseTooLarge(ValueError):
    pass


@dataclass
class AllCoresResult:
    cores: list  # frozensets, in discovery order, no duplicates
    intersection: Optional[frozenset]  # None when unknown (timeout before the split)
    complete: bool
    stats: CheckStats = field(default_factory=CheckStats)
    elapsed: float = 0.0
    nodes: list = field(default_factory=list)  # (E, K) of every recursive call

    @property
    def core_set(self) -> set:
        return set(self.cores)


def punch(elements: Iterable, known: Iterable, c, compute_core: Callable,
          *, reuse_cores: bool = True, timeout: Optional[float] = None) -> AllCoresResult:
    """All cores of ``elements``, each containing ``known``.

    ``compute_core(E, K)`` must return a core of E that contains K. With
    ``reuse_cores`` a previously found core inside E is returned instead of
    calling it, and found cores are fed to the criterion's memo as positives.
    """
    c = as_criterion(c)
    if timeout is not None and c.deadline is None:
        c.deadline = Deadline(timeout)
    deadline = c.deadline or Deadline(None)
    result = AllCoresResult([], None, False, c.stats)
    seen = set()
    started = time.monotonic()

    def core_of(E, K):
        if reuse_cores:
            for found in result.cores:
                if found <= E:
                    return found
        deadline.check()
        c.stats.core_computations += 1
        core = frozenset(compute_core(E, K))
        if c.memo is not None:
            c.memo.add(core, True)
        return core

    def recurse(E: frozenset, K: frozenset, top: bool):
        if not c(E):
            raise PreconditionError("punch called on a set that fails the criterion")
        result.nodes.append((E, K))
        core = core_of(E, K)
        if core not in seen:
            seen.add(core)
            result.cores.append(core)
        ci, cont = [], []
        for x in sorted(core - K):
            (cont if c(E - {x}) else ci).append(x)
        if top:
            result.intersection = K | frozenset(ci)
        deeper = K | frozenset(ci)
        for x in cont:
            recurse(E - {x}, deeper, False)

    try:
        recurse(frozenset(elements), frozenset(known), True)
        result.complete = True
    except Timeout:
        result.complete = False
    result.elapsed = time.monotonic() - started
    return result


def core_intersection(elements: Iterable, c, compute_core: Callable) -> frozenset:
    """Elements shared by all cores: one core computation plus |core| checks."""
    E = frozenset(elements)
    c = as_criterion(c)
    core = frozenset(compute_core(E, frozenset()))
    return frozenset(x for x in sorted(core) if not c(E - {x}))


def _problem_criterion(problem, memo, timeout, realizer):
    realizer = realizer or Realizer(problem)
    crit = unrealizability(realizer, memo=memo)
    if not crit(problem.guarantee_ids):
        raise RealizableError("specification is realizable; it has no unrealizable core")
    # the clock starts after the precondition check so a timeout always yields a report
    if timeout is not None:
        crit.deadline = Deadline(timeout)
    return realizer, crit


def punch_ud(problem: Gr1Problem, *, memo: bool = True, timeout: Optional[float] = None,
             realizer: Optional[Realizer] = None) -> AllCoresResult:
    """Punch with cores computed by DDMin with a base."""
    realizer, crit = _problem_criterion(problem, memo, timeout, realizer)

    def compute_core(E, K):
        return K | min_with_base(ddmin, E, K, E - K, crit)

    return punch(problem.guarantee_ids, (), crit, compute_core, reuse_cores=memo)


def punch_qc(problem: Gr1Problem, *, memo: bool = True, timeout: Optional[float] = None,
             realizer: Optional[Realizer] = None) -> AllCoresResult:
    """Punch with cores computed by QuickCore with a base."""
    realizer, crit = _problem_criterion(problem, memo, timeout, realizer)

    def compute_core(E, K):
        return K | run_quickcore(problem, K, E - K, realizer=realizer, crit=crit).core

    return punch(problem.guarantee_ids, (), crit, compute_core, reuse_cores=memo)


def td_all_cores(elements: Iterable, c, *, timeout: Optional[float] = None) -> AllCoresResult:
    """Naive top-down search: a satisfying set is a core iff no child satisfies."""
    c = as_criterion(c)
    if timeout is not None and c.deadline is None:
        c.deadline = Deadline(timeout)
    result = AllCoresResult([], None, False, c.stats)
    done = set()
    started = time.monotonic()

    def recurse(S: frozenset):
        if S in done:
            return
        done.add(S)
        if not c(S):
            return
        minimal = True
        for x in sorted(S):
            child = S - {x}
            if c(child):
                minimal = False
                recurse(child)
        if minimal:
            result.cores.append(S)

    E = frozenset(elements)
    try:
        if not c(E):
            raise PreconditionError("the criterion does not hold on the input set")
        recurse(E)
        result.complete = True
        result.cores.sort(key=sorted)
        result.intersection = (frozenset.intersection(*result.cores)
                               if result.cores else frozenset())
    except Timeout:
        result.complete = False
    result.elapsed = time.monotonic() - started
    return result


def td_problem(problem: Gr1Problem, *, memo: bool = True, timeout: Optional[float] = None,
               realizer: Optional[Realizer] = None) -> AllCoresResult:
    realizer, crit = _problem_criterion(problem, memo, timeout, realizer)
    return td_all_cores(problem.guarantee_ids, crit)


def brute_force_all_cores(elements: Iterable, c: Callable) -> set:
    """Every satisfying subset with no satisfying proper subset, by enumeration.

    Does not rely on monotonicity.
    """
    es = sorted(elements)
    n = len(es)
    if n > BRUTE_FORCE_LIMIT:
        raise UniverseTooLarge(f"{n} elements exceed the brute-force limit {BRUTE_FORCE_LIMIT}")
    subsets = [frozenset(es[i] for i in range(n) if m >> i & 1) for m in range(1 << n)]
    sat = [bool(c(s)) for s in subsets]
    # below[m]: some proper subset of m satisfies c
    below = [False] * (1 << n)
    for m in range(1 << n):
        bits = m
        while bits:
            low = bits & -bits
            sub = m ^ low
            if sat[sub] or below[sub]:
                below[m] = True
                break
            bits ^= low
    return {subsets[m] for m in range(1 << n) if sat[m] and not below[m]}
