"""Explicit automata: flowers, the composition operations and canonical automata by name."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .automaton import AutomatonError, DetTreeAutomaton, extend_alphabet_many, fresh_label
from .names import (C1, C3, CanonicalName, NameError_, _components, _kind, flower_index,
                    name_validate)
from .ordinals import Index, wpow
from .productivity import nonempty_states


class OpKind(enum.Enum):
    OR = "or"
    AND = "and"
    OPLUS = "oplus"
    ARROW = "arrow"
    KREP = "krep"


@dataclass(frozen=True)
class ComposeOp:
    kind: OpKind
    index: Optional[Index] = None

    def __post_init__(self):
        if (self.kind is OpKind.KREP) != (self.index is not None):
            raise ValueError("only KREP carries an index")

    @staticmethod
    def krep(i: Index) -> "ComposeOp":
        return ComposeOp(OpKind.KREP, i)

    @property
    def arity(self) -> int:
        if self.kind is OpKind.KREP:
            return 2 + self.index.span
        return 2

    def __str__(self) -> str:
        return f"krep{self.index}" if self.index else self.kind.value


ComposeOp.OR = ComposeOp(OpKind.OR)
ComposeOp.AND = ComposeOp(OpKind.AND)
ComposeOp.OPLUS = ComposeOp(OpKind.OPLUS)
ComposeOp.ARROW = ComposeOp(OpKind.ARROW)


# ---------------------------------------------------------------- flowers

def build_flower(i: Index) -> DetTreeAutomaton:
    letters = [f"a{j}" for j in range(i.iota, i.kappa + 1)]
    labels = [f"q{j}" for j in range(i.iota, i.kappa + 1)] + ["top"]
    top = len(labels) - 1
    rows = []
    for pos in range(len(letters)):
        row = []
        for lpos in range(len(letters)):
            if pos == 0:
                row.append((lpos, top))
            elif lpos == pos:
                row.append((0, top))
            else:
                row.append((top, top))
        rows.append(tuple(row))
    rows.append(tuple((top, top) for _ in letters))
    ranks = list(range(i.iota, i.kappa + 1)) + [0]
    return DetTreeAutomaton(tuple(letters), tuple(labels), tuple(ranks), 0, tuple(rows))


def build_weak_flower(i: Index) -> DetTreeAutomaton:
    blocks = [build_flower(Index(p, p)) for p in
              ((i.iota + j) % 2 for j in range(i.span + 1))]
    out = blocks[0]
    for b in blocks[1:]:
        out = compose_automata(ComposeOp.OPLUS, [out, b])
    return out


# ---------------------------------------------------------------- assembly

_FRESH = re.compile(r"^_[abk](\d+)")


def _depth(automata: Sequence[DetTreeAutomaton]) -> int:
    depth = -1
    for A in automata:
        for a in A.alphabet:
            m = _FRESH.match(a)
            if m:
                depth = max(depth, int(m.group(1)))
    return depth + 1


class _Assembly:
    def __init__(self, alphabet: Sequence[str]):
        self.alphabet = tuple(sorted(alphabet))
        self.pos = {a: i for i, a in enumerate(self.alphabet)}
        self.labels: list[str] = []
        self.ranks: list[int] = []
        self.rows: list[list[tuple[int, int]]] = []

    def state(self, label: str, rank: int, fill: Optional[tuple[int, int]] = None) -> int:
        q = len(self.labels)
        self.labels.append(fresh_label(self.labels, label))
        self.ranks.append(rank)
        self.rows.append([fill if fill else (q, q)] * len(self.alphabet))
        return q

    def fill(self, q: int, pair: tuple[int, int]):
        self.rows[q] = [pair] * len(self.alphabet)

    def set(self, q: int, letter: str, pair: tuple[int, int]):
        self.rows[q][self.pos[letter]] = pair

    def add(self, A: DetTreeAutomaton) -> int:
        """Copy A (already over the full alphabet); returns the handle offset."""
        if A.alphabet != self.alphabet:
            raise AutomatonError("operand not extended to the common alphabet")
        off = len(self.labels)
        for q in A.states():
            self.labels.append(fresh_label(self.labels, A.labels[q]))
            self.ranks.append(A.ranks[q])
            self.rows.append([(l + off, r + off) for l, r in A.delta[q]])
        return off

    def finish(self, initial: int) -> DetTreeAutomaton:
        return DetTreeAutomaton(self.alphabet, tuple(self.labels), tuple(self.ranks), initial,
                                tuple(tuple(r) for r in self.rows))


def _extend_all(operands: Sequence[DetTreeAutomaton], new: Sequence[str]):
    alphabet = sorted(set(new).union(*(A.alphabet for A in operands)))
    return alphabet, [extend_alphabet_many(A, alphabet) for A in operands]


def _is_empty(A: DetTreeAutomaton) -> bool:
    return A.initial not in nonempty_states(A).nonempty


def leftmost_states(A: DetTreeAutomaton) -> frozenset[int]:
    reach = A.reachable()
    right = {r for q in reach for _, r in A.delta[q]}
    return frozenset(reach - A.reachable(right)) if right else frozenset(reach)


# ---------------------------------------------------------------- operations

def compose_automata(op: ComposeOp, operands: Sequence[DetTreeAutomaton]) -> DetTreeAutomaton:
    operands = list(operands)
    if len(operands) != op.arity:
        raise AutomatonError(f"{op} takes {op.arity} operands, got {len(operands)}")
    d = _depth(operands)
    a, b = f"_a{d}", f"_b{d}"
    if op.kind is OpKind.OR:
        return _alternative(operands, a, b)
    if op.kind is OpKind.AND:
        return _parallel(operands, a)
    if op.kind is OpKind.OPLUS:
        return _sequential(operands, b)
    if op.kind is OpKind.ARROW:
        return _replicate(operands[0], Index(1, 1), operands[1:], [a], b, arrow=True)
    i = op.index
    letters = [f"_k{d}_{j}" for j in range(i.iota, i.kappa + 1)]
    return _replicate(operands[0], i, operands[1:], letters, b)


def _alternative(operands, a, b):
    alphabet, (A, B) = _extend_all(operands, [a, b])
    asm = _Assembly(alphabet)
    q0 = asm.state("q0", 0)
    oa, ob = asm.add(A), asm.add(B)
    top = asm.state("top", 0)
    if _is_empty(A) and _is_empty(B):
        bot = asm.state("bot", 1)
        asm.fill(q0, (bot, bot))
    else:
        asm.fill(q0, (top, top))
        asm.set(q0, a, (A.initial + oa, top))
        asm.set(q0, b, (B.initial + ob, top))
    return asm.finish(q0)


def _parallel(operands, a):
    alphabet, (A, B) = _extend_all(operands, [a])
    asm = _Assembly(alphabet)
    q0 = asm.state("q0", 0)
    oa, ob = asm.add(A), asm.add(B)
    top = asm.state("top", 0)
    if _is_empty(A) or _is_empty(B):
        bot = asm.state("bot", 1)
        asm.fill(q0, (bot, bot))
    else:
        asm.fill(q0, (top, top))
        asm.set(q0, a, (A.initial + oa, B.initial + ob))
    return asm.finish(q0)


def _sequential(operands, b):
    # leftmost states are read off the operand itself: extension sends empty states to themselves
    left = leftmost_states(operands[0])
    alphabet, (A, B) = _extend_all(operands, [b])
    if not left:
        raise AutomatonError("left operand of sequential composition has no leftmost state")
    asm = _Assembly(alphabet)
    oa, ob = asm.add(A), asm.add(B)
    top = asm.state("top", 0)
    for p in sorted(left):
        asm.set(p + oa, b, (B.initial + ob, top))
    return asm.finish(A.initial + oa)


def _replicate(base, i: Index, reps, letters, b, arrow: bool = False):
    alphabet, ext = _extend_all([base, *reps], [*letters, b])
    asm = _Assembly(alphabet)
    petals = [asm.state("q0" if arrow else f"q{j}", j) for j in range(i.iota, i.kappa + 1)]
    offs = [asm.add(X) for X in ext]
    top = asm.state("top", 0)
    head = petals[0]
    # foreign letters at a rejecting head lead nowhere, as in the plain replication
    if i.iota % 2:
        bot = asm.state("bot", 1)
        asm.fill(head, (bot, bot))
    else:
        asm.fill(head, (top, top))
    asm.set(head, b, (ext[0].initial + offs[0], top))
    for j, (q, letter) in enumerate(zip(petals, letters)):
        rep = ext[1 + j].initial + offs[1 + j]
        asm.set(head, letter, (q, rep))
        if j:
            asm.fill(q, (top, top))
            asm.set(q, letter, (head, top))
    return asm.finish(head)


# ---------------------------------------------------------------- canonical automata

def _top_automaton(k: int) -> DetTreeAutomaton:
    if k == 0:
        return compose_automata(ComposeOp.krep(Index(0, 1)),
                                [build(C1), build(C1), build_flower(Index(0, 2))])
    if k == 1:
        return compose_automata(ComposeOp.krep(Index(0, 0)), [build(C1), build_flower(Index(0, 1))])
    return DetTreeAutomaton(("a", "b"), ("q0", "q1", "top"), (0, 1, 0), 0,
                            (((0, 1), (2, 2)), ((0, 2), (2, 2)), ((2, 2), (2, 2))))


def _simple(s: CanonicalName) -> DetTreeAutomaton:
    kind = _kind(s)
    if s.letter == "E":
        return compose_automata(ComposeOp.OR, [_simple(CanonicalName("C", s.ordinal)),
                                               _simple(CanonicalName("D", s.ordinal))])
    if kind in ("fin", "fl"):
        return build_flower(flower_index(s))
    j, k = s.ordinal.terms[0][0]
    if k == (1 if j == 0 else 0):
        inner = build(C3) if j == 0 else build_flower(Index(0, 2))
    else:
        lower = _simple(CanonicalName("C", wpow(j, k - 1)))
        inner = compose_automata(ComposeOp.OPLUS, [build(C1), lower])
    return compose_automata(ComposeOp.ARROW, [build(C1), inner])


@lru_cache(maxsize=1024)
def build(n: CanonicalName) -> DetTreeAutomaton:
    if not name_validate(n):
        raise NameError_(f"invalid name {n}")
    if n.is_top:
        return _top_automaton(n.ordinal.top)
    comps = _components(n)
    out = _simple(comps[0])
    for s in comps[1:]:
        out = compose_automata(ComposeOp.OPLUS, [out, _simple(s)])
    return out
