"""Max-parity games and two independent solvers.

Player 0 wins a play when the highest priority seen infinitely often is
even. ``zielonka`` is the recursive attractor decomposition; ``progress_measures``
is the small-progress-measure lifting algorithm. Both return the winning
region of player 0 together with a positional strategy for player 0 on it.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ParityGame:
    owner: tuple[int, ...]
    priority: tuple[int, ...]
    succ: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for v, out in enumerate(self.succ):
            if not out:
                raise ValueError(f"position {v} has no move")

    @property
    def size(self) -> int:
        return len(self.owner)

    def pred(self) -> list[list[int]]:
        pred = [[] for _ in range(self.size)]
        for v, out in enumerate(self.succ):
            for w in out:
                pred[w].append(v)
        return pred


def _attractor(game: ParityGame, pred, region: set[int], target: set[int], player: int):
    """Attractor of `target` for `player` inside `region`, with the forcing moves."""
    attr = set(target)
    strategy: dict[int, int] = {}
    count = {v: sum(1 for w in game.succ[v] if w in region) for v in region}
    todo = list(target)
    while todo:
        w = todo.pop()
        for v in pred[w]:
            if v not in region or v in attr:
                continue
            if game.owner[v] == player:
                attr.add(v)
                strategy[v] = w
                todo.append(v)
            else:
                count[v] -= 1
                if count[v] == 0:
                    attr.add(v)
                    todo.append(v)
    return attr, strategy


def zielonka(game: ParityGame) -> tuple[set[int], dict[int, int]]:
    pred = game.pred()
    win, strat = _zielonka(game, pred, set(range(game.size)))
    return win[0], {v: w for v, w in strat[0].items() if v in win[0] and game.owner[v] == 0}


def _zielonka(game, pred, region: set[int]):
    if not region:
        return (set(), set()), ({}, {})
    d = max(game.priority[v] for v in region)
    i = d % 2
    top = {v for v in region if game.priority[v] == d}
    a, a_strat = _attractor(game, pred, region, top, i)
    (w0, w1), (s0, s1) = _zielonka(game, pred, region - a)
    sub_win = (w0, w1)
    sub_strat = (s0, s1)
    if not sub_win[1 - i]:
        strat_i = dict(sub_strat[i])
        strat_i.update(a_strat)
        for v in top:
            if game.owner[v] == i:
                strat_i[v] = next(w for w in game.succ[v] if w in region)
        win = [set(), set()]
        win[i] = set(region)
        strats = [{}, {}]
        strats[i] = strat_i
        return tuple(win), tuple(strats)
    b, b_strat = _attractor(game, pred, region, sub_win[1 - i], 1 - i)
    (v0, v1), (t0, t1) = _zielonka(game, pred, region - b)
    rest_win = (v0, v1)
    rest_strat = (t0, t1)
    win = [set(), set()]
    win[i] = rest_win[i]
    win[1 - i] = rest_win[1 - i] | b
    strats = [{}, {}]
    strats[i] = dict(rest_strat[i])
    opp = dict(rest_strat[1 - i])
    opp.update(sub_strat[1 - i])
    opp.update(b_strat)
    strats[1 - i] = opp
    return tuple(win), tuple(strats)


def progress_measures(game: ParityGame) -> tuple[set[int], dict[int, int]]:
    """Jurdzinski's small progress measures, run on the min-parity dual."""
    n = game.size
    big = max(game.priority) + (max(game.priority) % 2)
    # reversing priorities keeps parity and turns "max" into "min"
    prio = [big - p for p in game.priority]
    odd = sorted({p for p in prio if p % 2 == 1})
    bound = [sum(1 for p in prio if p == q) for q in odd]
    TOP = None
    rho: list = [tuple(0 for _ in odd)] * n

    def prog(m, p):
        if m is TOP:
            return TOP
        # keep only components of priorities <= p
        cut = sum(1 for q in odd if q <= p)
        head = list(m[:cut])
        if p % 2 == 1:
            k = cut - 1
            while k >= 0:
                if head[k] < bound[k]:
                    head[k] += 1
                    break
                head[k] = 0
                k -= 1
            if k < 0:
                return TOP
        return tuple(head) + (0,) * (len(odd) - cut)

    def key(m):
        return (1,) if m is TOP else (0,) + m

    pred = game.pred()

    def lift_value(v):
        vals = [prog(rho[w], prio[v]) for w in game.succ[v]]
        return min(vals, key=key) if game.owner[v] == 0 else max(vals, key=key)

    todo = list(range(n))
    queued = set(todo)
    while todo:
        v = todo.pop()
        queued.discard(v)
        new = lift_value(v)
        if key(new) > key(rho[v]):
            rho[v] = new
            for u in pred[v]:
                if u not in queued:
                    queued.add(u)
                    todo.append(u)
    win = {v for v in range(n) if rho[v] is not TOP}
    strategy = {}
    for v in win:
        if game.owner[v] == 0:
            strategy[v] = min(game.succ[v], key=lambda w: key(prog(rho[w], prio[v])))
    return win, strategy
