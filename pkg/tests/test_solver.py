import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gr1cores import Realizer, is_realizable, sys_win, winning_region
from gr1cores.symbolic import build_game

from conftest import load
from oracles import ExplicitGame, gr1_oracle, random_spec_text

GAME = "env boolean x;\nsys boolean y;\n"


def win_keys(realizer, asm=None, gar=None):
    g = realizer.game(asm, gar)
    return {ExplicitGame.key(s) for s in g.space.states(winning_region(g))}


@pytest.mark.parametrize("text, realizable", [
    (GAME + "gar alwEv y;\n", True),
    (GAME + "gar alwEv y;\ngar alwEv !y;\n", True),
    (GAME + "gar alw next(y) = y;\ngar alwEv y;\ngar alwEv !y;\n", False),
    (GAME + "gar alwEv x;\n", False),
    (GAME + "asm alwEv x;\ngar alwEv x;\n", True),
    (GAME + "gar alw next(y) = next(x);\ngar alwEv y;\n", False),
    (GAME + "asm alwEv x;\ngar alw next(y) = next(x);\ngar alwEv y;\n", True),
    (GAME + "gar ini y;\ngar alw next(y) = !next(x);\n", True),
    (GAME + "gar ini y = x;\ngar alw y != x;\n", False),
    (GAME + "gar ini y = x;\ngar alw next(y) = !next(x);\n", True),
    (GAME + "asm ini false;\ngar ini false;\n", True),
    (GAME + "asm alw false;\ngar alwEv false;\n", True),
    (GAME + "asm ini x;\nasm alw !next(x);\ngar alwEv false;\n", False),
    (GAME + "asm ini x;\nasm alw x -> false;\ngar alwEv false;\n", True),
])
def test_examples(text, realizable):
    p = load(text)
    assert is_realizable(p) is realizable
    assert gr1_oracle(p.project(p.assumption_ids, p.guarantee_ids))[1] is realizable


def test_env_deadlock_states_are_winning():
    # env has no legal move from x=true
    p = load(GAME + "asm alw x -> false;\ngar alwEv false;\n")
    r = Realizer(p)
    assert win_keys(r) == {(("x", True), ("y", b)) for b in (False, True)}


def test_sys_win():
    t = np.array([True, False])
    assert sys_win(np.array([True]), np.array([True, True]), np.array([True, False]))
    assert not sys_win(np.array([True, True]), np.array([True, True, False, True]),
                       np.array([True, True, True, False]))
    assert sys_win(np.array([False, True]), np.array([True, True, False, True]),
                   np.array([False, False, False, True]))
    assert sys_win(np.array([False]), t, t)  # no initial env state


def test_lift(lift, lift_realizer):
    assert not lift_realizer.is_realizable()
    without = lift.guarantee_ids - lift.ids_at_lines([27])
    assert lift_realizer.is_realizable(None, without)
    assert not lift_realizer.is_realizable(None, lift.ids_at_lines([21, 27, 36]))


def test_lift_matches_oracle(lift, lift_realizer, backend):
    for lines_ in ([21, 27, 36], [24, 27, 30, 37], [24, 27, 30], [21, 24, 30, 31, 32, 35]):
        gar = lift.ids_at_lines(lines_)
        win, ok = gr1_oracle(lift.project(lift.assumption_ids, gar))
        r = Realizer(lift)
        assert win_keys(r, None, gar) == win
        assert r.is_realizable(None, gar) == ok


def test_monitor(monitor):
    r = Realizer(monitor)
    assert not r.is_realizable()
    assert r.is_realizable(None, monitor.ids_at_lines([8, 9]))
    assert not r.is_realizable(None, monitor.ids_at_lines([4, 8, 9]))


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**6))
def test_winning_region_matches_oracle(seed):
    p = load(random_spec_text(random.Random(seed)))
    r = Realizer(p)
    win, ok = gr1_oracle(r.modules())
    assert win_keys(r) == win
    assert r.is_realizable() == ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_chunked_solver(seed):
    p = load(random_spec_text(random.Random(seed)))
    full = Realizer(p)
    lazy = Realizer(p, materialize_limit=5)
    assert (winning_region(full.game()) == winning_region(lazy.game())).all()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_unrealizability_monotone(seed, data):
    p = load(random_spec_text(random.Random(seed)))
    gars = sorted(p.guarantee_ids)
    r = Realizer(p)
    order = data.draw(st.permutations(gars))
    # along a growing chain, once unrealizable always unrealizable
    seen_unreal = False
    for k in range(len(order) + 1):
        unreal = not r.is_realizable(None, order[:k])
        assert unreal or not seen_unreal
        seen_unreal |= unreal


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_env_justice_irrelevant_without_sys_justice(seed):
    p = load(random_spec_text(random.Random(seed)))
    r = Realizer(p)
    gar = frozenset(i for i in p.guarantee_ids if i.kind != "alwEv")
    asm_no_j = frozenset(i for i in p.assumption_ids if i.kind != "alwEv")
    assert r.is_realizable(None, gar) == r.is_realizable(asm_no_j, gar)


def test_winning_region_ignores_initials(lift, lift_realizer):
    a = lift_realizer.winning_region(None, lift.ids_at_lines([27, 36]))
    b = lift_realizer.winning_region(None, lift.ids_at_lines([21, 27, 36]))
    assert (a == b).all()


def test_realizer_counts_calls(lift):
    r = Realizer(lift)
    r.is_realizable()
    r.is_realizable(None, ())
    assert r.calls == 2


def test_build_game_direct(lift):
    g = build_game(lift.project(lift.assumption_ids, lift.guarantee_ids))
    w = winning_region(g)
    assert w.dtype == bool and w.shape == (g.space.size,)
