"""Canonical names of deterministic tree automata, Wadge comparison and Borel classes.

The canonical name of a state depends only on its strongly connected
component, so names are computed once per component, sinks first. Each
component is settled from the names of the components directly below it.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .names import (C1, C2, D1, CanonicalName, C, D, and_name, arrow_name, krep_name,
                    name_leq, or_name)
from .ordinals import Index, Order, index_dual, top, wpow
from .productivity import as_normalized
from .structure import (SATURATED, Analysis, Sentinel, analysis, contains_flower,
                        contains_weak_flower, has_flower12, has_rejecting, has_split, lift_ranks,
                        top0_local, top1_local, weak_chains, weak12_replicated_local)

_F12 = D(wpow(1, 0))
_F13 = D(wpow(1, 1))
_F01 = C(wpow(1, 0))


class CanonicalizationError(RuntimeError):
    """An internal invariant of the recursion failed."""


def _fold_or(names) -> Optional[CanonicalName]:
    out = None
    for n in names:
        out = n if out is None else or_name(out, n)
    return out


class _Canonicalizer:
    def __init__(self, an: Analysis):
        self.an = an
        self.memo: dict[int, CanonicalName] = {}

    def name_of_state(self, q: int) -> CanonicalName:
        return self.memo[self.an.scc_of[q]]

    def run(self, root: int) -> CanonicalName:
        an = self.an
        wanted = {root}
        todo = [root]
        while todo:
            for c in an.children[todo.pop()]:
                if c not in wanted:
                    wanted.add(c)
                    todo.append(c)
        for i in sorted(wanted, reverse=True):  # sinks first
            self.memo[i] = self.component(i)
        return self.memo[root]

    def component(self, i: int) -> CanonicalName:
        an = self.an
        if an.bottom is not None and an.sccs[i] == (an.bottom,):
            return D1
        if not an.reaches(i, has_rejecting):
            return C1
        if an.reaches(i, has_split):
            return C(top(2))
        if an.reaches(i, top1_local):
            return C(top(1))
        if an.reaches(i, top0_local):
            return C(top(0))
        if an.internal[i]:
            return self.with_internal(i)
        return self.without_internal(i)

    def _signs(self, i: int) -> tuple[bool, bool]:
        an, A = self.an, self.an.A
        pos = neg = False
        for q, k in an.internal[i]:
            for t in A.delta[q][k]:
                prof = an.edge_profile(q, t)
                pos |= any(r % 2 == 0 for r in prof)
                neg |= any(r % 2 == 1 for r in prof)
        return pos, neg

    def with_internal(self, i: int) -> CanonicalName:
        an = self.an
        positive, _ = self._signs(i)
        hard = an.reaches(i, has_flower12) or an.reaches(i, weak12_replicated_local)
        if positive:
            return _F12 if hard else C2
        if an.has_acc[i]:
            return _F13 if hard else _F01
        exits = []
        home = set(an.sccs[i])
        for q in an.sccs[i]:
            for l, r in an.A.delta[q]:
                if l in home and r in home:
                    continue
                if l not in home and r not in home:
                    exits.append(and_name(self.name_of_state(l), self.name_of_state(r)))
                else:
                    exits.append(self.name_of_state(r if l in home else l))
        return arrow_name(C1, _fold_or(exits) or D1)

    def without_internal(self, i: int) -> CanonicalName:
        an, A = self.an, self.an.A
        home = set(an.sccs[i])
        base = []
        for q in an.sccs[i]:
            for l, r in A.delta[q]:
                if l not in home and r not in home:
                    base.append(and_name(self.name_of_state(l), self.name_of_state(r)))
        idx = an.scc_flower(i)
        if idx is None:
            return _fold_or(base) or D1
        reps: dict[int, list[CanonicalName]] = {j: [] for j in range(idx.iota, idx.kappa + 1)}
        for q, k, d, prof in an.loop_edges(i):
            sibling = self.name_of_state(A.delta[q][k][1 - d])
            for j in prof:
                if j in reps:
                    reps[j].append(sibling)
        folded = []
        for j in range(idx.iota, idx.kappa + 1):
            f = _fold_or(reps[j])
            if f is None:
                raise CanonicalizationError(f"no {j}-loop edge in a lifted ({idx.iota},{idx.kappa}) component")
            folded.append(f)
        # a flower with no exit of its own still lets the token leave through removal
        return krep_name(_fold_or(base) or C1, idx, folded)


def canonicalize(A) -> CanonicalName:
    N = as_normalized(A)
    if N.bottom is not None and N.automaton.initial == N.bottom:
        return D1
    L = lift_ranks(N)
    an = analysis(L)
    return _Canonicalizer(an).run(an.scc_of[L.automaton.initial])


def canonical_names_by_state(A) -> dict[str, CanonicalName]:
    """Name of every productive state (and the dead state), keyed by label."""
    L = lift_ranks(as_normalized(A))
    an = analysis(L)
    c = _Canonicalizer(an)
    c.run(an.scc_of[L.automaton.initial])
    return {L.automaton.labels[q]: c.name_of_state(q) for q in L.automaton.reachable()}


def wadge_compare(A, B) -> Order:
    return name_leq(canonicalize(A), canonicalize(B))


# ---------------------------------------------------------------- classification

class TopologicalClass(enum.Enum):
    DELTA01 = "Delta^0_1"
    SIGMA01 = "Sigma^0_1"
    PI01 = "Pi^0_1"
    DELTA02 = "Delta^0_2"
    SIGMA02 = "Sigma^0_2"
    PI02 = "Pi^0_2"
    DELTA03 = "Delta^0_3"
    SIGMA03 = "Sigma^0_3"
    PI03 = "Pi^0_3"
    PI11_COMPLETE = "Pi^1_1-complete"


@dataclass(frozen=True)
class ClassificationReport:
    canonical_name: CanonicalName
    borel: TopologicalClass
    complete: bool
    membership: dict = field(hash=False)
    det_index: tuple[Index, ...]
    weak_det_index: Union[tuple[Index, ...], Sentinel]

    def to_json(self) -> dict:
        weak = ("NONE" if self.weak_det_index is SATURATED
                else [str(i) for i in self.weak_det_index])
        return {
            "borel": self.borel.value,
            "canonical_name": str(self.canonical_name),
            "complete": self.complete,
            "det_index": [str(i) for i in self.det_index],
            "membership": {k.value: v for k, v in self.membership.items()},
            "weak_det_index": weak,
        }


def _minimal(admissible) -> tuple[Index, ...]:
    span = 0
    while True:
        found = tuple(i for i in (Index(0, span), Index(1, span + 1)) if admissible(i))
        if found:
            return found
        span += 1


def det_index(A) -> tuple[Index, ...]:
    N = as_normalized(A)
    return _minimal(lambda i: not contains_flower(N, index_dual(i)))


def weak_det_index(A) -> Union[tuple[Index, ...], Sentinel]:
    N = as_normalized(A)
    if weak_chains(N) is SATURATED:
        return SATURATED
    return _minimal(lambda i: not contains_weak_flower(N, index_dual(i)))


def borel_membership(A) -> dict[TopologicalClass, bool]:
    N = as_normalized(A)
    an = analysis(N)
    root = an.scc_of[N.automaton.initial]
    T = TopologicalClass
    split = an.reaches(root, has_split)
    sigma3 = not an.reaches(root, top1_local)
    pi3 = not split
    acc_weak12 = an.reaches(root, weak12_replicated_local)
    return {
        T.SIGMA01: not contains_weak_flower(N, Index(0, 1)),
        T.PI01: not contains_weak_flower(N, Index(1, 2)),
        T.SIGMA02: not contains_flower(N, Index(1, 2)) and not acc_weak12,
        T.PI02: not contains_flower(N, Index(0, 1)),
        T.SIGMA03: sigma3,
        T.PI03: pi3,
    }


def classify(A) -> ClassificationReport:
    N = as_normalized(A)
    name = canonicalize(N)
    m = borel_membership(N)
    T = TopologicalClass
    complete = True
    if not m[T.PI03]:
        cls = T.PI11_COMPLETE
    else:
        for low, s, p in ((T.DELTA01, T.SIGMA01, T.PI01), (T.DELTA02, T.SIGMA02, T.PI02),
                          (T.DELTA03, T.SIGMA03, T.PI03)):
            if m[s] and m[p]:
                cls, complete = low, low is T.DELTA03 and name == C(top(0))
                break
            if m[s] or m[p]:
                cls = s if m[s] else p
                break
    return ClassificationReport(name, cls, complete, m, det_index(N), weak_det_index(N))
