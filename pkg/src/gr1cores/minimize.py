"""Domain-agnostic core minimizers over a monotonic criterion.

Elements may be any orderable hashables; all iteration follows their sort
order, so every algorithm here is deterministic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable, Optional


class PreconditionError(ValueError):
    pass


class Timeout(Exception):
    """Raised cooperatively once a Deadline has passed."""


class Deadline:
    def __init__(self, seconds: Optional[float]):
        self.expires = None if seconds is None else time.monotonic() + seconds

    def check(self) -> None:
        if self.expires is not None and time.monotonic() > self.expires:
            raise Timeout()


@dataclass
class CheckStats:
    actual_checks: int = 0
    memo_hits: int = 0
    core_computations: int = 0
    syswin_checks: int = 0


def _sorted_subset(small: tuple, big: tuple) -> bool:
    """Linear merge test of ``small`` being a subset of ``big``; both sorted."""
    j, n = 0, len(big)
    for x in small:
        while j < n and big[j] < x:
            j += 1
        if j == n or big[j] != x:
            return False
        j += 1
    return True


class MemoCache:
    """Prior positive and negative criterion results, bucketed by set size.

    A positive result answers every superset query, a negative result every
    subset query.
    """

    def __init__(self):
        self.positive: dict = {}  # size -> list of sorted tuples
        self.negative: dict = {}

    def query(self, subset) -> Optional[bool]:
        key = tuple(sorted(subset))
        n = len(key)
        for size, sets in self.positive.items():
            if size <= n and any(_sorted_subset(p, key) for p in sets):
                return True
        for size, sets in self.negative.items():
            if size >= n and any(_sorted_subset(key, s) for s in sets):
                return False
        return None

    def add(self, subset, result: bool) -> None:
        key = tuple(sorted(subset))
        known = self.query(key)
        if known is not None:
            if known != result:
                raise PreconditionError(
                    f"criterion is not monotonic: {key} was {known}, now {result}"
                )
            return
        table = self.positive if result else self.negative
        table.setdefault(len(key), []).append(key)

    def __len__(self) -> int:
        return sum(map(len, self.positive.values())) + sum(map(len, self.negative.values()))


class Criterion:
    """A monotonic predicate on subsets, with check accounting.

    ``memo`` (optional) short-circuits checks implied by earlier results;
    ``stats`` and ``deadline`` may be shared between related criteria.
    """

    def __init__(self, fn: Callable, memo: Optional[MemoCache] = None,
                 stats: Optional[CheckStats] = None, deadline: Optional[Deadline] = None):
        self.fn = fn
        self.memo = memo
        self.stats = stats if stats is not None else CheckStats()
        self.deadline = deadline

    @property
    def checks(self) -> int:
        return self.stats.actual_checks

    def __call__(self, subset: Iterable) -> bool:
        s = frozenset(subset)
        if self.memo is not None:
            known = self.memo.query(s)
            if known is not None:
                self.stats.memo_hits += 1
                return known
        if self.deadline is not None:
            self.deadline.check()
        self.stats.actual_checks += 1
        result = bool(self.fn(s))
        if self.memo is not None:
            self.memo.add(s, result)
        return result

    def rebind(self, fn: Callable) -> "Criterion":
        """Same cache, stats and deadline, different underlying check."""
        return Criterion(fn, self.memo, self.stats, self.deadline)

    def with_base(self, base: Iterable) -> "Criterion":
        base = frozenset(base)
        return _BasedCriterion(self, base)


class _BasedCriterion(Criterion):
    def __init__(self, inner: Criterion, base: frozenset):
        super().__init__(inner.fn, None, inner.stats, inner.deadline)
        self.inner = inner
        self.base = base

    def __call__(self, subset: Iterable) -> bool:
        return self.inner(self.base | frozenset(subset))


def memoize(c) -> Criterion:
    """Wrap a criterion (or plain callable) with a fresh MemoCache."""
    if isinstance(c, Criterion):
        return Criterion(c.fn, MemoCache(), c.stats, c.deadline)
    return Criterion(c, MemoCache())


def as_criterion(c) -> Criterion:
    return c if isinstance(c, Criterion) else Criterion(c)


def is_core(subset: Iterable, c: Callable) -> bool:
    """Local minimality: ``c(subset)`` and no single removal keeps it."""
    s = frozenset(subset)
    return bool(c(s)) and not any(c(s - {x}) for x in sorted(s))


def partition(elements: list, n: int) -> list:
    """Split into ``min(n, len)`` contiguous chunks whose sizes differ by <= 1."""
    n = min(n, len(elements))
    q, r = divmod(len(elements), n)
    out, i = [], 0
    for k in range(n):
        size = q + (1 if k < r else 0)
        out.append(elements[i : i + size])
        i += size
    return out


def _require(c, elements):
    if not c(elements):
        raise PreconditionError("the criterion does not hold on the input set")


def ddmin(elements: Iterable, c) -> frozenset:
    """Delta debugging: a core of ``elements`` (which must satisfy ``c``)."""
    c = as_criterion(c)
    es = sorted(elements)
    _require(c, es)
    return frozenset(_ddmin(es, 2, c))


def _ddmin(es: list, n: int, c) -> list:
    while True:
        parts = partition(es, n) if es else []
        # reduce to a subset
        smaller = next((p for p in parts if len(p) < len(es) and c(p)), None)
        if smaller is not None:
            es, n = smaller, 2
            continue
        # reduce to a complement
        rest = None
        for part in parts:
            drop = set(part)
            candidate = [e for e in es if e not in drop]
            if c(candidate):
                rest = candidate
                break
        if rest is not None:
            es, n = rest, max(n - 1, 2)
            continue
        if n >= len(es):
            return es
        n = min(len(es), 2 * n)


def quickxplain(elements: Iterable, c) -> frozenset:
    """Junker's divide-and-conquer minimization with contiguous halving."""
    c = as_criterion(c)
    es = sorted(elements)
    _require(c, es)
    if c(()):
        return frozenset()
    return frozenset(_qx([], False, es, c))


def _qx(background: list, delta: bool, cands: list, c) -> list:
    if delta and c(background):
        return []
    if len(cands) == 1:
        return cands
    half = len(cands) // 2
    first, second = cands[:half], cands[half:]
    d2 = _qx(background + first, bool(first), second, c)
    d1 = _qx(background + d2, bool(d2), first, c)
    return d1 + d2


def linear_min(elements: Iterable, c) -> frozenset:
    """Drop each element, in order, whenever the rest still satisfies ``c``."""
    c = as_criterion(c)
    es = sorted(elements)
    _require(c, es)
    kept = list(es)
    for x in es:
        trial = [e for e in kept if e != x]
        if c(trial):
            kept = trial
    return frozenset(kept)


ALGORITHMS = {"ddmin": ddmin, "quickxplain": quickxplain, "linear": linear_min}


def min_with_base(alg, elements: Iterable, base: Iterable, subset: Iterable, c) -> frozenset:
    """Locally minimal A' within ``subset`` such that ``base | A'`` satisfies ``c``.

    ``elements`` is the enclosing universe and only used for validation.
    """
    alg = ALGORITHMS[alg] if isinstance(alg, str) else alg
    c = as_criterion(c)
    base, subset = frozenset(base), frozenset(subset)
    universe = frozenset(elements)
    if base & subset:
        raise PreconditionError("base and minimized set overlap")
    if not (base | subset) <= universe:
        raise PreconditionError("base and minimized set must lie in the universe")
    return alg(subset, c.with_base(base))
