"""GR(1) winning regions and realizability checks over element-ID subsets."""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .reduction import GameModules, Gr1Problem
from .symbolic import (
    DEFAULT_MATERIALIZE_LIMIT,
    DEFAULT_STATE_CAP,
    GameBuilder,
    GameStructure,
)


def _gfp(f, top):
    x = top
    while True:
        nx = f(x)
        if np.array_equal(nx, x):
            return x
        x = nx


def winning_region(g: GameStructure) -> np.ndarray:
    """Three-nested GR(1) fixed point.

    W = nu Z. AND_j mu Y. OR_i nu X. (Js_j & cpre Z) | cpre Y | (!Je_i & cpre X).
    Empty justice lists count as the single justice "true".
    """
    full = g.space.full()
    sys_j = g.sys_justice or [full]
    env_j = g.env_justice or [full]

    def z_step(z):
        cz = g.cpre(z)
        out = full.copy()
        for js in sys_j:
            goal = js & cz
            y = g.space.empty()
            while True:
                reach = goal | g.cpre(y)
                ny = g.space.empty()
                for je in env_j:
                    avoid = ~je
                    ny |= _gfp(lambda x: reach | (avoid & g.cpre(x)), full)
                if np.array_equal(ny, y):
                    break
                y = ny
            out &= y
        return out

    return _gfp(z_step, full)


def sys_win(theta_e: np.ndarray, theta_s: np.ndarray, w: np.ndarray) -> bool:
    """Every initial env choice in theta_e has a sys completion in theta_s & w."""
    n_env = theta_e.shape[0]
    good = np.logical_and(theta_s, w).reshape(n_env, -1).any(axis=1)
    return bool(np.all(good | ~theta_e))


class Realizer:
    """Realizability of one problem under varying assumption/guarantee subsets.

    Evaluated assertion arrays are cached per state space, so repeated
    checks only pay for set algebra and the fixed point.
    """

    def __init__(self, problem: Gr1Problem, cap: int = DEFAULT_STATE_CAP,
                 materialize_limit: int = DEFAULT_MATERIALIZE_LIMIT):
        self.problem = problem
        self.builder = GameBuilder(cap, materialize_limit)
        self.calls = 0

    def modules(self, asm_ids=None, gar_ids=None) -> GameModules:
        p = self.problem
        asm_ids = p.assumption_ids if asm_ids is None else asm_ids
        gar_ids = p.guarantee_ids if gar_ids is None else gar_ids
        return p.project(asm_ids, gar_ids)

    def game(self, asm_ids=None, gar_ids=None) -> GameStructure:
        return self.builder.build(self.modules(asm_ids, gar_ids))

    def winning_region(self, asm_ids=None, gar_ids=None) -> np.ndarray:
        return winning_region(self.game(asm_ids, gar_ids))

    def is_realizable(self, asm_ids=None, gar_ids=None) -> bool:
        self.calls += 1
        g = self.game(asm_ids, gar_ids)
        if not g.theta_e.any():
            return True
        return sys_win(g.theta_e, g.theta_s, winning_region(g))

    def initial_states(self, game: GameStructure, gar_ids: Iterable) -> np.ndarray:
        """theta_s of ``game`` restricted to the ini assertions of ``gar_ids``."""
        ids = frozenset(gar_ids)
        assertions = [
            a for a in self.problem.assertions
            if a.player == "sys" and a.kind == "ini" and a.element in ids
        ]
        return self.builder.initial(game.space, assertions)


def is_realizable(problem: Gr1Problem, asm_ids: Optional[Iterable] = None,
                  gar_ids: Optional[Iterable] = None, cap: int = DEFAULT_STATE_CAP) -> bool:
    """project -> game -> sys_win(theta_e, theta_s, winning_region)."""
    return Realizer(problem, cap).is_realizable(asm_ids, gar_ids)
