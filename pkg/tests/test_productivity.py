import random

import pytest

from wadgetree.automaton import from_table
from wadgetree.builder import build_flower
from wadgetree.canonical import canonicalize
from wadgetree.games import ParityGame, progress_measures, zielonka
from wadgetree.ordinals import Index
from wadgetree.productivity import (nonempty_states, nonempty_states_progress, normalize,
                                    productive_states)

from support import brute_nonempty, random_automaton, strategy_is_sound

# p --a--> (r, t) with r accepting and t rejecting forever
PRT = from_table(["a"], [("p", 0), ("r", 0), ("t", 1)], "p",
                 {("p", "a"): ("r", "t"), ("r", "a"): ("r", "r"), ("t", "a"): ("t", "t")})


def test_all_even_ranks_are_nonempty():
    A = random_automaton(random.Random(1))
    A = A.with_ranks([2 * (r // 2) for r in A.ranks])
    assert nonempty_states(A).nonempty == frozenset(A.states())


def test_forced_rejecting_branch():
    res = nonempty_states(PRT)
    assert {PRT.labels[q] for q in res.nonempty} == {"r"}
    assert nonempty_states_progress(PRT).nonempty == res.nonempty
    assert brute_nonempty(PRT) == set(res.nonempty)
    assert productive_states(PRT) == frozenset()


def test_flower_is_nonempty_everywhere():
    F = build_flower(Index(1, 2))
    res = nonempty_states(F)
    assert res.nonempty == frozenset(F.states())
    assert strategy_is_sound(F, res.nonempty, res.eve_strategy)


def test_flower_states_are_productive():
    F = build_flower(Index(0, 1))
    assert productive_states(F) == frozenset(F.states())


@pytest.mark.parametrize("seed", range(10))
def test_solvers_agree_and_strategies_hold(seed):
    rng = random.Random(1000 + seed)
    for _ in range(100):
        A = random_automaton(rng, max_states=8, max_letters=3, max_rank=3)
        z, p = nonempty_states(A), nonempty_states_progress(A)
        assert z.nonempty == p.nonempty
        assert set(z.eve_strategy) == set(z.nonempty)
        assert strategy_is_sound(A, z.nonempty, z.eve_strategy)
        assert strategy_is_sound(A, p.nonempty, p.eve_strategy)


def test_exhaustive_positional_choice_on_small_automata():
    rng = random.Random(7)
    for _ in range(150):
        A = random_automaton(rng, max_states=5, max_letters=2, max_rank=3)
        assert set(nonempty_states(A).nonempty) == brute_nonempty(A)


def test_game_solvers_on_a_hand_game():
    # 0 (player 0) may stay on priority 2 or move to 1 (player 1) which traps in priority 3
    g = ParityGame(owner=(0, 1, 1), priority=(2, 1, 3), succ=((0, 1), (2,), (2,)))
    for solve in (zielonka, progress_measures):
        win, strategy = solve(g)
        assert win == {0}
        assert strategy[0] == 0


def test_game_needs_moves():
    with pytest.raises(ValueError):
        ParityGame(owner=(0,), priority=(0,), succ=((),))


def test_normalize_keeps_fully_productive_automaton():
    F = build_flower(Index(0, 2))
    N = normalize(F)
    assert N.automaton is F and N.bottom is None


def test_normalize_of_empty_initial_is_bottom():
    N = normalize(PRT)
    assert N.automaton.size == 1 and N.bottom == 0
    assert N.automaton.ranks == (1,)
    assert N.productive == frozenset()


def test_normalize_redirects_dead_transitions():
    A = from_table(["a", "b"], [("q0", 0), ("dead", 1)], "q0",
                   {("q0", "a"): ("q0", "q0"), ("q0", "b"): ("dead", "dead"),
                    ("dead", "a"): ("dead", "dead"), ("dead", "b"): ("dead", "dead")})
    N = normalize(A)
    B = N.automaton
    q0 = B.handle("q0")
    assert B.step(q0, "a") == (q0, q0)
    assert B.step(q0, "b") == (N.bottom, N.bottom)
    assert N.productive == frozenset({q0})


@pytest.mark.parametrize("seed", range(5))
def test_normal_form_invariants(seed):
    rng = random.Random(seed)
    for _ in range(60):
        A = random_automaton(rng)
        N = normalize(A)
        B = N.automaton
        alive = nonempty_states(B).nonempty
        assert (A.initial in nonempty_states(A).nonempty) == (B.initial in alive)
        for q in B.states():
            if q == N.bottom:
                assert B.ranks[q] % 2 == 1
                assert all(pair == (q, q) for pair in B.delta[q])
                continue
            assert q in N.productive and q in alive
            for l, r in B.delta[q]:
                assert (l, r) == (N.bottom, N.bottom) or (l in alive and r in alive)
        assert productive_states(B) == N.productive
        assert normalize(B).automaton == B
        assert canonicalize(B) == canonicalize(A)
