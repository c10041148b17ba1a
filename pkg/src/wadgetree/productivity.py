"""Nonemptiness, productive states and the normal form with a single dead state."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .automaton import DetTreeAutomaton, fresh_label
from .games import ParityGame, progress_measures, zielonka


@dataclass(frozen=True)
class NonemptinessResult:
    nonempty: frozenset[int]
    eve_strategy: dict[int, str]


@dataclass(frozen=True)
class NormalizedAutomaton:
    automaton: DetTreeAutomaton
    bottom: Optional[int]
    productive: frozenset[int]


def emptiness_game(A: DetTreeAutomaton) -> ParityGame:
    """Positions 0..n-1 are states (letter chooser); then one per (state, letter)."""
    n, k = A.size, len(A.alphabet)
    owner = [0] * n + [1] * (n * k)
    priority = list(A.ranks) + [A.ranks[q] for q in range(n) for _ in range(k)]
    succ = [tuple(n + q * k + i for i in range(k)) for q in range(n)]
    for q in range(n):
        for i in range(k):
            left, right = A.delta[q][i]
            succ.append((left,) if left == right else (left, right))
    return ParityGame(tuple(owner), tuple(priority), tuple(succ))


def _result(A, win, strategy) -> NonemptinessResult:
    n, k = A.size, len(A.alphabet)
    nonempty = frozenset(q for q in range(n) if q in win)
    letters = {q: A.alphabet[(strategy[q] - n) % k] for q in nonempty}
    return NonemptinessResult(nonempty, letters)


def nonempty_states(A: DetTreeAutomaton) -> NonemptinessResult:
    game = emptiness_game(A)
    win, strategy = zielonka(game)
    return _result(A, win, strategy)


def nonempty_states_progress(A: DetTreeAutomaton) -> NonemptinessResult:
    """Same question answered by the progress-measure solver (cross-check)."""
    game = emptiness_game(A)
    win, strategy = progress_measures(game)
    return _result(A, win, strategy)


def productive_states(A: DetTreeAutomaton, nonempty: frozenset[int] | None = None) -> frozenset[int]:
    if nonempty is None:
        nonempty = nonempty_states(A).nonempty
    if A.initial not in nonempty:
        return frozenset()
    seen = {A.initial}
    todo = [A.initial]
    while todo:
        q = todo.pop()
        for left, right in A.delta[q]:
            if left in nonempty and right in nonempty:
                for t in (left, right):
                    if t not in seen:
                        seen.add(t)
                        todo.append(t)
    return frozenset(seen)


def bottom_automaton(alphabet, label: str = "bot") -> DetTreeAutomaton:
    return DetTreeAutomaton(tuple(alphabet), (label,), (1,), 0,
                            (tuple((0, 0) for _ in alphabet),))


def normalize(A: DetTreeAutomaton) -> NormalizedAutomaton:
    nonempty = nonempty_states(A).nonempty
    productive = productive_states(A, nonempty)
    if not productive:
        return NormalizedAutomaton(bottom_automaton(A.alphabet), 0, frozenset())
    if len(productive) == A.size:
        return NormalizedAutomaton(A, None, productive)
    keep = sorted(productive)
    pos = {q: i for i, q in enumerate(keep)}
    bottom = len(keep)
    labels = [A.labels[q] for q in keep]
    labels.append(fresh_label(labels, "bot"))
    rows = []
    for q in keep:
        row = []
        for left, right in A.delta[q]:
            if left in nonempty and right in nonempty:
                row.append((pos[left], pos[right]))
            else:
                row.append((bottom, bottom))
        rows.append(tuple(row))
    rows.append(tuple((bottom, bottom) for _ in A.alphabet))
    ranks = [A.ranks[q] for q in keep] + [1]
    B = DetTreeAutomaton(A.alphabet, tuple(labels), tuple(ranks), pos[A.initial], tuple(rows))
    return NormalizedAutomaton(B, bottom, frozenset(range(len(keep))))


def as_normalized(A) -> NormalizedAutomaton:
    return A if isinstance(A, NormalizedAutomaton) else normalize(A)
