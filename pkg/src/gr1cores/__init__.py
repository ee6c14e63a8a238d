"""Realizability checking and unrealizable-core computation for GR(1) specifications."""

from ._backend import BACKEND
from .minimize import (
    CheckStats,
    Criterion,
    MemoCache,
    PreconditionError,
    ddmin,
    is_core,
    linear_min,
    memoize,
    min_with_base,
    quickxplain,
)
from .punch import (
    AllCoresResult,
    brute_force_all_cores,
    core_intersection,
    punch,
    punch_qc,
    punch_ud,
    td_all_cores,
)
from .quickcore import RealizableError, quickcore, quickcore_with_base, run_quickcore
from .reduction import Gr1Problem, reduce
from .solver import Realizer, is_realizable, sys_win, winning_region
from .syntax import SpecError, parse_spec

__all__ = [
    "BACKEND", "AllCoresResult", "CheckStats", "Criterion", "Gr1Problem", "MemoCache",
    "PreconditionError", "RealizableError", "Realizer", "SpecError",
    "brute_force_all_cores", "core_intersection", "ddmin", "is_core", "is_realizable",
    "linear_min", "memoize", "min_with_base", "parse_spec", "punch", "punch_qc",
    "punch_ud", "quickcore", "quickcore_with_base", "quickxplain", "reduce",
    "run_quickcore", "sys_win", "td_all_cores", "winning_region",
]
