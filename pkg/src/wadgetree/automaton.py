"""Deterministic parity tree automata: data model, text format and DOT export.

States are addressed by dense integer handles (declaration order); the
original labels are kept for I/O. Letters are plain strings and the
alphabet is always stored sorted, so two automata built from the same
declarations compare equal regardless of how their alphabets were listed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple

HEADER = "dta v1"
_TOKEN = re.compile(r"[^\s#]+")


class AutomatonError(ValueError):
    """Raised for structurally invalid automata."""


class ParseError(AutomatonError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class Edge(NamedTuple):
    source: int
    letter: str
    direction: int
    target: int


@dataclass(frozen=True)
class DetTreeAutomaton:
    alphabet: tuple[str, ...]
    labels: tuple[str, ...]
    ranks: tuple[int, ...]
    initial: int
    # delta[q][i] is the (left, right) pair for letter alphabet[i]
    delta: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise AutomatonError("automaton has no states")
        if len(set(self.labels)) != n:
            raise AutomatonError("duplicate state label")
        if list(self.alphabet) != sorted(set(self.alphabet)):
            raise AutomatonError("alphabet must be sorted and duplicate free")
        if not self.alphabet:
            raise AutomatonError("empty alphabet")
        if len(self.ranks) != n or len(self.delta) != n:
            raise AutomatonError("ranks/delta size mismatch")
        if not 0 <= self.initial < n:
            raise AutomatonError("initial state out of range")
        for q, row in enumerate(self.delta):
            if len(row) != len(self.alphabet):
                raise AutomatonError(f"state {self.labels[q]} is missing transitions")
            for left, right in row:
                if not (0 <= left < n and 0 <= right < n):
                    raise AutomatonError(f"state {self.labels[q]} has a dangling target")
        if any(r < 0 for r in self.ranks):
            raise AutomatonError("ranks must be natural numbers")

    @property
    def size(self) -> int:
        return len(self.labels)

    def states(self) -> range:
        return range(len(self.labels))

    def letter_index(self, letter: str) -> int:
        try:
            return self.alphabet.index(letter)
        except ValueError:
            raise AutomatonError(f"unknown letter {letter!r}") from None

    def handle(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise AutomatonError(f"unknown state {label!r}") from None

    def step(self, q: int, letter: str) -> tuple[int, int]:
        return self.delta[q][self.letter_index(letter)]

    def edges(self) -> Iterator[Edge]:
        for q, row in enumerate(self.delta):
            for i, pair in enumerate(row):
                yield Edge(q, self.alphabet[i], 0, pair[0])
                yield Edge(q, self.alphabet[i], 1, pair[1])

    def successors(self, q: int) -> set[int]:
        return {t for pair in self.delta[q] for t in pair}

    def reachable(self, start: int | Iterable[int] | None = None) -> set[int]:
        if start is None:
            start = self.initial
        todo = [start] if isinstance(start, int) else list(start)
        seen = set(todo)
        while todo:
            q = todo.pop()
            for t in self.successors(q):
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return seen

    def with_ranks(self, ranks: Iterable[int]) -> "DetTreeAutomaton":
        return DetTreeAutomaton(self.alphabet, self.labels, tuple(ranks),
                                self.initial, self.delta)

    def with_initial(self, q: int) -> "DetTreeAutomaton":
        return DetTreeAutomaton(self.alphabet, self.labels, self.ranks, q, self.delta)


def from_table(alphabet: Iterable[str], states: Iterable[tuple[str, int]],
               initial: str,
               transitions: Mapping[tuple[str, str], tuple[str, str]]) -> DetTreeAutomaton:
    """Build an automaton from labelled data, checking totality."""
    letters = sorted(set(alphabet))
    states = list(states)
    labels = [s for s, _ in states]
    index = {s: i for i, s in enumerate(labels)}
    if len(index) != len(labels):
        raise AutomatonError("duplicate state label")
    if initial not in index:
        raise AutomatonError(f"undeclared start state {initial!r}")
    rows = []
    for s in labels:
        row = []
        for a in letters:
            if (s, a) not in transitions:
                raise AutomatonError(f"missing transition for ({s}, {a})")
            left, right = transitions[(s, a)]
            for t in (left, right):
                if t not in index:
                    raise AutomatonError(f"undeclared state {t!r}")
            row.append((index[left], index[right]))
        rows.append(tuple(row))
    extra = {key for key in transitions if key[0] not in index or key[1] not in letters}
    if extra:
        s, a = sorted(extra)[0]
        raise AutomatonError(f"transition for undeclared ({s}, {a})")
    return DetTreeAutomaton(tuple(letters), tuple(labels),
                            tuple(r for _, r in states), index[initial], tuple(rows))


def parse_automaton(text: str) -> DetTreeAutomaton:
    alphabet: list[str] | None = None
    start: tuple[str, int] | None = None
    states: list[tuple[str, int]] = []
    declared: dict[str, int] = {}
    transitions: dict[tuple[str, str], tuple[str, str]] = {}
    seen_at: dict[tuple[str, str], int] = {}
    targets_at: list[tuple[str, int, int]] = []
    header_seen = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(raw.split("#", 1)[0])]
        if not tokens:
            continue
        words = [t for t, _ in tokens]
        if not header_seen:
            if words != ["dta", "v1"]:
                raise ParseError("expected header 'dta v1'", lineno, tokens[0][1])
            header_seen = True
            continue
        head = words[0]
        if head == "alphabet":
            if alphabet is not None:
                raise ParseError("duplicate alphabet line", lineno, tokens[0][1])
            if len(words) < 2:
                raise ParseError("alphabet needs at least one letter", lineno, len(raw) + 1)
            if len(set(words[1:])) != len(words) - 1:
                raise ParseError("repeated letter in alphabet", lineno, tokens[1][1])
            alphabet = words[1:]
        elif head == "start":
            if start is not None:
                raise ParseError("duplicate start line", lineno, tokens[0][1])
            if len(words) != 2:
                raise ParseError("expected 'start <state>'", lineno, tokens[0][1])
            start = (words[1], lineno)
        elif head == "state":
            if len(words) != 3:
                raise ParseError("expected 'state <name> <rank>'", lineno, tokens[0][1])
            name, rank = words[1], words[2]
            if not rank.isdigit():
                raise ParseError(f"rank must be a natural number, got {rank!r}", lineno, tokens[2][1])
            if name in declared:
                raise ParseError(f"state {name!r} declared twice", lineno, tokens[1][1])
            declared[name] = lineno
            states.append((name, int(rank)))
        elif len(words) == 5 and words[2] == "->":
            src, letter, _, left, right = words
            if alphabet is None:
                raise ParseError("transition before alphabet line", lineno, tokens[0][1])
            if letter not in alphabet:
                raise ParseError(f"unknown letter {letter!r}", lineno, tokens[1][1])
            key = (src, letter)
            if key in transitions:
                raise ParseError(f"duplicate transition for ({src}, {letter}); first at line {seen_at[key]}",
                                 lineno, tokens[0][1])
            transitions[key] = (left, right)
            seen_at[key] = lineno
            targets_at.append((src, lineno, tokens[0][1]))
            targets_at.append((left, lineno, tokens[3][1]))
            targets_at.append((right, lineno, tokens[4][1]))
        else:
            raise ParseError(f"unrecognised line starting with {head!r}", lineno, tokens[0][1])

    if not header_seen:
        raise ParseError("empty input, expected header 'dta v1'", 1)
    if alphabet is None:
        raise ParseError("missing alphabet line", len(text.splitlines()) or 1)
    if start is None:
        raise AutomatonError("no start state")
    for name, lineno, col in targets_at:
        if name not in declared:
            raise ParseError(f"undeclared state {name!r}", lineno, col)
    if start[0] not in declared:
        raise ParseError(f"undeclared start state {start[0]!r}", start[1])
    for name, _ in states:
        for a in alphabet:
            if (name, a) not in transitions:
                raise AutomatonError(f"missing transition for ({name}, {a})")
    return from_table(alphabet, states, start[0], transitions)


def serialize_automaton(A: DetTreeAutomaton) -> str:
    lines = [HEADER, "alphabet " + " ".join(A.alphabet), "start " + A.labels[A.initial]]
    lines += [f"state {A.labels[q]} {A.ranks[q]}" for q in A.states()]
    for q in A.states():
        for i, a in enumerate(A.alphabet):
            left, right = A.delta[q][i]
            lines.append(f"{A.labels[q]} {a} -> {A.labels[left]} {A.labels[right]}")
    return "\n".join(lines) + "\n"


def export_dot(A: DetTreeAutomaton) -> str:
    out = ["digraph automaton {", "  rankdir=LR;"]
    for q in A.states():
        shape = "doublecircle" if A.ranks[q] % 2 == 0 else "circle"
        style = ", style=bold" if q == A.initial else ""
        out.append(f'  n{q} [label="{_dot_escape(A.labels[q])}:{A.ranks[q]}", shape={shape}{style}];')
    for e in A.edges():
        out.append(f'  n{e.source} -> n{e.target} [label="{_dot_escape(e.letter)},{e.direction}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def fresh_label(taken: Iterable[str], base: str) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    k = 1
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def is_top(A: DetTreeAutomaton, q: int) -> bool:
    """An even-ranked state whose every transition loops back to itself."""
    return A.ranks[q] % 2 == 0 and all(pair == (q, q) for pair in A.delta[q])


def extend_alphabet(A: DetTreeAutomaton, tau: str) -> DetTreeAutomaton:
    if tau in A.alphabet:
        raise AutomatonError(f"letter {tau!r} already in the alphabet")
    return extend_alphabet_many(A, [tau])


def extend_alphabet_many(A: DetTreeAutomaton, letters: Iterable[str],
                         empty: set[int] | None = None) -> DetTreeAutomaton:
    """Add fresh letters one at a time; emptiness is invariant under each step."""
    new = sorted(set(letters) - set(A.alphabet))
    if not new:
        return A
    if empty is None:
        from .productivity import nonempty_states
        alive = nonempty_states(A).nonempty
        empty = {q for q in A.states() if q not in alive}
    labels = list(A.labels)
    ranks = list(A.ranks)
    top = next((q for q in A.states() if is_top(A, q)), None)
    if top is None:
        top = len(labels)
        labels.append(fresh_label(labels, "top"))
        ranks.append(0)
    # empty states keep their new transitions inside a dead sink; a self-loop would
    # turn a leftmost empty state into a right successor of itself
    sinks = [q for q in sorted(empty) if all(pair == (q, q) for pair in A.delta[q])]
    bot = None
    if any(q not in sinks for q in empty):
        if sinks:
            bot = sinks[0]
        else:
            bot = len(labels)
            labels.append(fresh_label(labels, "bot"))
            ranks.append(1)
    alphabet = sorted(set(A.alphabet) | set(new))
    old_pos = {a: i for i, a in enumerate(A.alphabet)}
    rows = []
    for q in range(len(labels)):
        row = []
        for a in alphabet:
            if q < A.size and a in old_pos:
                row.append(A.delta[q][old_pos[a]])
            elif q == top:
                row.append((top, top))
            elif q in sinks or (q == bot and q >= A.size):
                row.append((q, q))
            elif q in empty:
                row.append((bot, bot))
            else:
                row.append((top, top))
        rows.append(tuple(row))
    return DetTreeAutomaton(tuple(alphabet), tuple(labels), tuple(ranks), A.initial, tuple(rows))


def subautomaton(A: DetTreeAutomaton, q: int | str) -> DetTreeAutomaton:
    if isinstance(q, str):
        q = A.handle(q)
    if not 0 <= q < A.size:
        raise AutomatonError(f"unknown state handle {q}")
    keep = sorted(A.reachable(q))
    return restrict(A, keep, q)


def restrict(A: DetTreeAutomaton, keep: list[int], initial: int) -> DetTreeAutomaton:
    """Restrict to a successor-closed, handle-ordered subset of states."""
    pos = {old: new for new, old in enumerate(keep)}
    rows = tuple(tuple((pos[l], pos[r]) for l, r in A.delta[old]) for old in keep)
    return DetTreeAutomaton(A.alphabet, tuple(A.labels[q] for q in keep),
                            tuple(A.ranks[q] for q in keep), pos[initial], rows)
