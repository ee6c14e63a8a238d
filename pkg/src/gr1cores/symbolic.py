"""Explicit state spaces, assertion evaluation and the controllable predecessor.

State sets are numpy bool vectors indexed by a mixed-radix encoding of the
variable order (environment variables first, last variable fastest), so a
full state index is ``env_index * n_sys + sys_index``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from . import _backend
from .reduction import Assertion, GameModules
from .syntax import BinOp, Const, Expr, Not, Var

DEFAULT_STATE_CAP = 2**22
DEFAULT_MATERIALIZE_LIMIT = 2**24  # entries of the |space| x |space| relation


class StateSpaceTooLarge(ValueError):
    pass


class MissingSuccessorError(ValueError):
    pass


def _radix_values(decls, count):
    """Per-variable value arrays over all ``count`` assignments of ``decls``."""
    out = {}
    stride = count
    for d in decls:
        size = d.domain.size
        stride //= size
        digits = (np.arange(count) // stride) % size
        out[d.name] = np.asarray(d.domain.values)[digits]
    return out


class StateSpace:
    """All assignments to an ordered variable list."""

    def __init__(self, decls, cap: int = DEFAULT_STATE_CAP):
        self.env_vars = tuple(d for d in decls if d.is_env)
        self.sys_vars = tuple(d for d in decls if not d.is_env)
        self.variables = self.env_vars + self.sys_vars
        self.n_env = int(np.prod([d.domain.size for d in self.env_vars], dtype=object))
        self.n_sys = int(np.prod([d.domain.size for d in self.sys_vars], dtype=object))
        self.size = self.n_env * self.n_sys
        if self.size > cap:
            raise StateSpaceTooLarge(f"state space of {self.size} states exceeds cap {cap}")
        self.key = tuple(d.name for d in self.variables)
        self.full_values = _radix_values(self.variables, self.size)
        self.env_values = _radix_values(self.env_vars, self.n_env)
        self.sys_values = _radix_values(self.sys_vars, self.n_sys)

    def empty(self) -> np.ndarray:
        return np.zeros(self.size, dtype=bool)

    def full(self) -> np.ndarray:
        return np.ones(self.size, dtype=bool)

    def index(self, assignment: Mapping) -> int:
        idx = 0
        for d in self.variables:
            idx = idx * d.domain.size + d.domain.values.index(assignment[d.name])
        return idx

    def state(self, index: int) -> dict:
        return {name: vals[index].item() for name, vals in self.full_values.items()}

    def env_part(self, index: int) -> int:
        return index // self.n_sys

    def states(self, subset: np.ndarray) -> list:
        return [self.state(i) for i in np.flatnonzero(subset)]


# --------------------------------------------------------------------------
# Expression evaluation (works on scalars and on broadcastable arrays)

_BINARY = {
    "&": np.logical_and,
    "|": np.logical_or,
    "->": lambda a, b: np.logical_or(np.logical_not(a), b),
    "<->": np.equal,
    "=": np.equal,
    "!=": np.not_equal,
    "<": np.less,
    "<=": np.less_equal,
    ">": np.greater,
    ">=": np.greater_equal,
    "+": np.add,
    "-": np.subtract,
}


def _eval(expr: Expr, current: Mapping, successor: Optional[Mapping]):
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Var):
        if expr.primed:
            if successor is None:
                raise MissingSuccessorError(f"next({expr.name}) needs a successor state")
            return successor[expr.name]
        return current[expr.name]
    if isinstance(expr, Not):
        return np.logical_not(_eval(expr.operand, current, successor))
    return _BINARY[expr.op](
        _eval(expr.left, current, successor), _eval(expr.right, current, successor)
    )


def evaluate(expr: Expr, state: Mapping, successor: Optional[Mapping] = None) -> bool:
    """Truth value of ``expr`` in ``state``; ``next(v)`` reads ``successor``."""
    return bool(_eval(expr, state, successor))


def evaluate_array(expr: Expr, current: Mapping, successor: Optional[Mapping], shape):
    value = _eval(expr, current, successor)
    return np.broadcast_to(np.asarray(value, dtype=bool), shape)


# --------------------------------------------------------------------------
# Game structure


@dataclass
class GameStructure:
    """Explicit GR(1) game over ``space``.

    theta_e ranges over environment assignments, every other set over full
    states. Transition relations are materialized when small enough and
    evaluated in row chunks otherwise.
    """

    space: StateSpace
    theta_e: np.ndarray
    theta_s: np.ndarray
    env_justice: list
    sys_justice: list
    env_safety: tuple = ()
    sys_safety: tuple = ()
    rho_e: Optional[np.ndarray] = None
    rho_s: Optional[np.ndarray] = None
    chunk_rows: int = field(default=0)

    @property
    def materialized(self) -> bool:
        return self.rho_e is not None

    def relation_rows(self, start: int, stop: int):
        """(rho_e, rho_s) restricted to current states ``start:stop``."""
        if self.materialized:
            return self.rho_e[start:stop], self.rho_s[start:stop]
        sp = self.space
        rows = stop - start
        cur2 = {k: v[start:stop, None] for k, v in sp.full_values.items()}
        nxt2 = {k: v[None, :] for k, v in sp.env_values.items()}
        rho_e = np.ones((rows, sp.n_env), dtype=bool)
        for e in self.env_safety:
            rho_e &= evaluate_array(e, cur2, nxt2, rho_e.shape)
        cur3 = {k: v[start:stop, None, None] for k, v in sp.full_values.items()}
        nxt3 = {k: v[None, :, None] for k, v in sp.env_values.items()}
        nxt3.update({k: v[None, None, :] for k, v in sp.sys_values.items()})
        rho_s = np.ones((rows, sp.n_env, sp.n_sys), dtype=bool)
        for e in self.sys_safety:
            rho_s &= evaluate_array(e, cur3, nxt3, rho_s.shape)
        return rho_e, rho_s

    def cpre(self, target: np.ndarray) -> np.ndarray:
        """States from which every legal env input has a legal sys answer in target."""
        if self.materialized:
            return _backend.cpre(self.rho_e, self.rho_s, target)
        out = np.empty(self.space.size, dtype=bool)
        step = self.chunk_rows
        for start in range(0, self.space.size, step):
            stop = min(start + step, self.space.size)
            re, rs = self.relation_rows(start, stop)
            out[start:stop] = _backend.cpre(re, rs, target)
        return out


class GameBuilder:
    """Builds GameStructures from projected modules, caching per-space arrays."""

    def __init__(self, cap: int = DEFAULT_STATE_CAP,
                 materialize_limit: int = DEFAULT_MATERIALIZE_LIMIT):
        self.cap = cap
        self.materialize_limit = materialize_limit
        self._spaces: dict = {}
        self._arrays: dict = {}

    def space(self, decls) -> StateSpace:
        key = tuple(d.name for d in decls)
        sp = self._spaces.get(key)
        if sp is None:
            sp = self._spaces[key] = StateSpace(decls, self.cap)
        return sp

    def materializes(self, sp: StateSpace) -> bool:
        return sp.size * sp.size <= self.materialize_limit

    def state_array(self, sp: StateSpace, a: Assertion, over_env: bool = False):
        key = (sp.key, a.index)
        arr = self._arrays.get(key)
        if arr is None:
            if over_env:
                arr = evaluate_array(a.expr, sp.env_values, None, (sp.n_env,))
            else:
                arr = evaluate_array(a.expr, sp.full_values, None, (sp.size,))
            arr = np.ascontiguousarray(arr)
            self._arrays[key] = arr
        return arr

    def _relation(self, sp: StateSpace, a: Assertion):
        key = (sp.key, a.index)
        arr = self._arrays.get(key)
        if arr is None:
            g = GameStructure(sp, None, None, [], [],
                              env_safety=(a.expr,) if a.player == "env" else (),
                              sys_safety=(a.expr,) if a.player == "sys" else ())
            re, rs = g.relation_rows(0, sp.size)
            arr = self._arrays[key] = re if a.player == "env" else rs
        return arr

    def initial(self, sp: StateSpace, assertions, over_env: bool = False) -> np.ndarray:
        out = np.ones(sp.n_env if over_env else sp.size, dtype=bool)
        for a in assertions:
            out &= self.state_array(sp, a, over_env)
        return out

    def build(self, modules: GameModules) -> GameStructure:
        sp = self.space(modules.variables)
        g = GameStructure(
            space=sp,
            theta_e=self.initial(sp, modules.env.ini, over_env=True),
            theta_s=self.initial(sp, modules.sys.ini),
            env_justice=[self.state_array(sp, a) for a in modules.env.justice],
            sys_justice=[self.state_array(sp, a) for a in modules.sys.justice],
            env_safety=tuple(a.expr for a in modules.env.safety),
            sys_safety=tuple(a.expr for a in modules.sys.safety),
        )
        if self.materializes(sp):
            rho_e = np.ones((sp.size, sp.n_env), dtype=bool)
            for a in modules.env.safety:
                rho_e &= self._relation(sp, a)
            rho_s = np.ones((sp.size, sp.n_env, sp.n_sys), dtype=bool)
            for a in modules.sys.safety:
                rho_s &= self._relation(sp, a)
            g.rho_e, g.rho_s = rho_e, rho_s
        else:
            g.chunk_rows = max(1, self.materialize_limit // max(sp.size, 1))
        return g


def build_game(modules: GameModules, cap: int = DEFAULT_STATE_CAP,
               materialize_limit: int = DEFAULT_MATERIALIZE_LIMIT) -> GameStructure:
    return GameBuilder(cap, materialize_limit).build(modules)


def cpre(game: GameStructure, target: np.ndarray) -> np.ndarray:
    return game.cpre(target)
