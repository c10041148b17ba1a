"""Loop structure of normalized automata.

Loops are closed paths, not necessarily simple, so the set of states a
loop can visit is exactly a strongly connected set of states. A loop
through a given state or edge with highest rank ``r`` therefore exists iff
the anchor sits in a component of the subgraph of rank <= r states that
also holds a rank ``r`` state. Every detector below is built on that fact.

The dead state of a normalized automaton is an ordinary rank-1 state here:
its self-loop is a rejecting loop, which is what makes closed but not
open languages visible to the weak-flower tests.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Union

from .automaton import DetTreeAutomaton
from .graphs import cyclic_components, reach, tarjan_scc
from .ordinals import Index, index_from_chain
from .productivity import NormalizedAutomaton, as_normalized


class Sentinel(enum.Enum):
    SATURATED = "saturated"


SATURATED = Sentinel.SATURATED
ACCEPTING, REJECTING = 0, 1


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class Split:
    state: int
    letter: str
    left_profile: frozenset[int]
    right_profile: frozenset[int]


@dataclass(frozen=True)
class Condensation:
    scc_of: tuple[int, ...]
    sccs: tuple[tuple[int, ...], ...]  # sources first
    dag: frozenset[tuple[int, int]]
    has_accepting_loop: tuple[bool, ...]
    has_rejecting_loop: tuple[bool, ...]
    has_internal_transition: tuple[bool, ...]


@dataclass(frozen=True)
class PatternReport:
    max_flower: Optional[Index]
    max_weak_flower: Union[Index, Sentinel, None]
    split: Optional[Split]
    acc_replicated: frozenset[int]
    rej_replicated: frozenset[int]
    admits_top0: bool
    admits_top1: bool
    admits_top2: bool


def _chains_with_split(A: DetTreeAutomaton, succ, states: list[int]) -> tuple[int, int]:
    """Longest flower chains (ending even, ending odd) inside a cyclic component."""
    m = max(A.ranks[q] for q in states)
    p = m % 2
    rest = [q for q in states if A.ranks[q] < m]
    sub = [0, 0]
    for comp in cyclic_components(rest, lambda v: succ[v]):
        c = _chains_with_split(A, succ, comp)
        sub = [max(sub[0], c[0]), max(sub[1], c[1])]
    best = [0, 0]
    best[p] = max(1, sub[1 - p] + 1, sub[p])
    best[1 - p] = max(sub[1 - p], best[p] - 1)
    return best[0], best[1]


class Analysis:
    """Everything the detectors need, computed once per automaton."""

    def __init__(self, N: NormalizedAutomaton):
        A = N.automaton
        self.N = N
        self.A = A
        self.bottom = N.bottom
        n = A.size
        self.succ = [sorted(A.successors(q)) for q in range(n)]
        comps = tarjan_scc(range(n), lambda v: self.succ[v])
        comps.reverse()
        self.sccs = [tuple(c) for c in comps]
        self.scc_of = [0] * n
        for i, c in enumerate(self.sccs):
            for q in c:
                self.scc_of[q] = i
        self.children = [set() for _ in self.sccs]
        for q in range(n):
            for t in self.succ[q]:
                if self.scc_of[t] != self.scc_of[q]:
                    self.children[self.scc_of[q]].add(self.scc_of[t])
        # per scc, per rank r: state -> component id, for components holding a rank-r state
        self.tables: list[dict[int, dict[int, int]]] = []
        self.chains: list[tuple[int, int]] = []
        for c in self.sccs:
            table = {}
            for r in sorted({A.ranks[q] for q in c}):
                low = [q for q in c if A.ranks[q] <= r]
                tab = {}
                for k, comp in enumerate(cyclic_components(low, lambda v: self.succ[v])):
                    if any(A.ranks[q] == r for q in comp):
                        for q in comp:
                            tab[q] = k
                if tab:
                    table[r] = tab
            self.tables.append(table)
            cyclic = bool(table)
            self.chains.append(_chains_with_split(A, self.succ, list(c)) if cyclic else (0, 0))
        self.tops = [frozenset(t) for t in self.tables]
        self.has_acc = [any(r % 2 == 0 for r in t) for t in self.tops]
        self.has_rej = [any(r % 2 == 1 for r in t) for t in self.tops]
        self.internal = []
        for i, c in enumerate(self.sccs):
            cs = set(c)
            self.internal.append([(q, k) for q in c for k, (l, r) in enumerate(A.delta[q])
                                  if l in cs and r in cs])
        self._reach_cache: dict = {}

    # -- loops
    def state_profile(self, q: int) -> frozenset[int]:
        tab = self.tables[self.scc_of[q]]
        return frozenset(r for r, m in tab.items() if q in m)

    def edge_profile(self, q: int, t: int) -> frozenset[int]:
        if self.scc_of[q] != self.scc_of[t]:
            return frozenset()
        tab = self.tables[self.scc_of[q]]
        return frozenset(r for r, m in tab.items() if q in m and t in m and m[q] == m[t])

    def loop_edges(self, i: int):
        """(state, letter index, direction, profile) for every edge staying in scc i."""
        A = self.A
        for q in self.sccs[i]:
            for k, pair in enumerate(A.delta[q]):
                for d in (0, 1):
                    if self.scc_of[pair[d]] == i:
                        prof = self.edge_profile(q, pair[d])
                        if prof:
                            yield q, k, d, prof

    # -- flowers
    def scc_flower(self, i: int) -> Optional[Index]:
        e, o = self.chains[i]
        if not (e or o):
            return None
        p = max(self.tops[i]) % 2
        return index_from_chain((e, o)[p], p)

    def scc_contains_flower(self, i: int, idx: Index) -> bool:
        return self.chains[i][idx.kappa % 2] >= idx.kappa - idx.iota + 1

    # -- reachability over the scc dag
    def reaches(self, i: int, pred) -> bool:
        """Does some scc reachable from scc i (i included) satisfy pred?"""
        key = (i, pred)
        if key in self._reach_cache:
            return self._reach_cache[key]
        seen = {i}
        todo = [i]
        while todo:
            j = todo.pop()
            for c in self.children[j]:
                if c not in seen:
                    seen.add(c)
                    todo.append(c)
        # sccs are numbered sources first, so descending order is bottom-up
        for j in sorted(seen, reverse=True):
            k = (j, pred)
            if k not in self._reach_cache:
                self._reach_cache[k] = pred(self, j) or any(self._reach_cache[(c, pred)]
                                                          for c in self.children[j])
        return self._reach_cache[key]

    def replication_sources(self, polarity: Optional[int], i: Optional[int] = None):
        """Siblings of edges lying on a loop of the given polarity (None: any loop)."""
        A = self.A
        out = set()
        for j in range(len(self.sccs)) if i is None else [i]:
            for q, k, d, prof in self.loop_edges(j):
                if polarity is None or any(r % 2 == polarity for r in prof):
                    out.add(A.delta[q][k][1 - d])
        return out

    def replicated(self, polarity: int) -> frozenset[int]:
        return frozenset(reach(self.replication_sources(polarity), lambda v: self.succ[v]))

    def split_in(self, i: int) -> Optional[Split]:
        A = self.A
        for q, k in self.internal[i]:
            l, r = A.delta[q][k]
            p0, p1 = self.edge_profile(q, l), self.edge_profile(q, r)
            if _is_split(p0, p1):
                return Split(q, A.alphabet[k], p0, p1)
        return None


def _is_split(p0: Iterable[int], p1: Iterable[int]) -> bool:
    for a, b in ((p0, p1), (p1, p0)):
        for hi in a:
            if hi % 2 == 1 and any(lo % 2 == 0 and lo < hi for lo in b):
                return True
    return False


# ---- scc-local predicates used through Analysis.reaches

def has_split(an: Analysis, i: int) -> bool:
    return an.split_in(i) is not None


def has_flower01(an: Analysis, i: int) -> bool:
    return an.scc_contains_flower(i, Index(0, 1))


def has_flower12(an: Analysis, i: int) -> bool:
    return an.scc_contains_flower(i, Index(1, 2))


def has_flower02(an: Analysis, i: int) -> bool:
    return an.scc_contains_flower(i, Index(0, 2))


def has_rejecting(an: Analysis, i: int) -> bool:
    return an.has_rej[i]


def has_accepting(an: Analysis, i: int) -> bool:
    return an.has_acc[i]


def starts_weak12(an: Analysis, i: int) -> bool:
    """A rejecting loop here with an accepting loop reachable from it."""
    return an.has_rej[i] and an.reaches(i, has_accepting)


def _replicates(an: Analysis, i: int, polarity: Optional[int], target) -> bool:
    return any(an.reaches(an.scc_of[s], target) for s in an.replication_sources(polarity, i))


def top1_local(an: Analysis, i: int) -> bool:
    return _replicates(an, i, ACCEPTING, has_flower01)


def top0_local(an: Analysis, i: int) -> bool:
    return an.has_acc[i] and an.has_rej[i] and _replicates(an, i, None, has_flower02)


def weak12_replicated_local(an: Analysis, i: int) -> bool:
    return _replicates(an, i, ACCEPTING, starts_weak12)


@lru_cache(maxsize=64)
def _analysis(N: NormalizedAutomaton) -> Analysis:
    return Analysis(N)


def analysis(A) -> Analysis:
    return _analysis(as_normalized(A))


# ---------------------------------------------------------------- public API

def condensation(A) -> Condensation:
    an = analysis(A)
    dag = frozenset((i, c) for i in range(len(an.sccs)) for c in an.children[i])
    return Condensation(tuple(an.scc_of), tuple(an.sccs), dag, tuple(an.has_acc),
                        tuple(an.has_rej), tuple(bool(x) for x in an.internal))


def loop_rank_profile(A, anchor, scope: Optional[int] = None) -> frozenset[int]:
    """Anchor is a state handle or an edge (state, letter, direction)."""
    an = analysis(A)
    if isinstance(anchor, int):
        home = an.scc_of[anchor]
        if scope is not None and scope != home:
            raise StructureError("anchor outside the given scc")
        return an.state_profile(anchor)
    q, letter, d = anchor
    t = an.A.step(q, letter)[d]
    home = an.scc_of[q]
    if (scope is not None and scope != home) or an.scc_of[t] != home:
        raise StructureError("anchor edge leaves its scc")
    return an.edge_profile(q, t)


def flower_indices(A) -> list[Index]:
    an = analysis(A)
    return [f for f in (an.scc_flower(i) for i in range(len(an.sccs))) if f is not None]


def maximal_flowers(A) -> list[Index]:
    """The flower indices of maximal span (one, or two dual ones)."""
    found = set(flower_indices(A))
    if not found:
        return []
    span = max(f.span for f in found)
    return sorted(f for f in found if f.span == span)


def max_flower(A) -> Optional[Index]:
    best = maximal_flowers(A)
    return best[0] if best else None


def contains_flower(A, idx: Index) -> bool:
    an = analysis(A)
    return any(an.scc_contains_flower(i, idx) for i in range(len(an.sccs)))


def weak_chains(A) -> Union[tuple[int, int], Sentinel]:
    """Longest weak flower starting with an accepting / a rejecting loop."""
    an = analysis(A)
    if any(a and r for a, r in zip(an.has_acc, an.has_rej)):
        return SATURATED
    k = len(an.sccs)
    start = [0] * k  # longest chain starting at scc i with its own loop
    best_below = [[0, 0] for _ in range(k)]  # longest chain from a strictly lower scc, by first polarity
    for i in reversed(range(k)):
        below = [0, 0]
        for c in an.children[i]:
            for pol in (0, 1):
                below[pol] = max(below[pol], best_below[c][pol])
            if an.has_acc[c] or an.has_rej[c]:
                pol = ACCEPTING if an.has_acc[c] else REJECTING
                below[pol] = max(below[pol], start[c])
        best_below[i] = below
        if an.has_acc[i] or an.has_rej[i]:
            pol = ACCEPTING if an.has_acc[i] else REJECTING
            start[i] = 1 + below[1 - pol]
    out = [0, 0]
    for i in range(k):
        if an.has_acc[i] or an.has_rej[i]:
            pol = ACCEPTING if an.has_acc[i] else REJECTING
            out[pol] = max(out[pol], start[i])
    return out[0], out[1]


def max_weak_flower(A) -> Union[Index, Sentinel, None]:
    chains = weak_chains(A)
    if chains is SATURATED:
        return SATURATED
    acc, rej = chains
    if not (acc or rej):
        return None
    if acc >= rej:
        return Index(0, acc - 1)
    return Index(1, rej)


def contains_weak_flower(A, idx: Index) -> bool:
    chains = weak_chains(A)
    if chains is SATURATED:
        return True
    return chains[idx.iota] >= idx.kappa - idx.iota + 1


def find_split(A) -> Optional[Split]:
    an = analysis(A)
    for i in range(len(an.sccs)):
        s = an.split_in(i)
        if s is not None:
            return s
    return None


def replicated_states(A, polarity: Union[int, str]) -> frozenset[int]:
    if isinstance(polarity, str):
        polarity = {"accepting": ACCEPTING, "rejecting": REJECTING}[polarity]
    return analysis(A).replicated(polarity)


def detect_top_patterns(A) -> tuple[bool, bool, bool]:
    an = analysis(A)
    root = an.scc_of[an.A.initial]
    return (an.reaches(root, top0_local), an.reaches(root, top1_local), an.reaches(root, has_split))


def weak12_replicated(A) -> bool:
    an = analysis(A)
    return an.reaches(an.scc_of[an.A.initial], weak12_replicated_local)


def pattern_report(A) -> PatternReport:
    an = analysis(A)
    t0, t1, t2 = detect_top_patterns(A)
    return PatternReport(max_flower(A), max_weak_flower(A), find_split(A),
                         an.replicated(ACCEPTING), an.replicated(REJECTING), t0, t1, t2)


# ---------------------------------------------------------------- lifting

def _lift_component(A, succ, states: list[int], value: int, out: list[int]):
    m = max(A.ranks[q] for q in states)
    rest = [q for q in states if A.ranks[q] < m]
    subs = cyclic_components(rest, lambda v: succ[v])
    inside = {q for c in subs for q in c}
    for q in states:
        if q not in inside:
            out[q] = value
    for comp in subs:
        sub_top = max(A.ranks[q] for q in comp)
        _lift_component(A, succ, comp, value if sub_top % 2 == m % 2 else value - 1, out)


def lift_ranks(A) -> NormalizedAutomaton:
    N = as_normalized(A)
    an = analysis(N)
    B = N.automaton
    new = list(B.ranks)
    for i, c in enumerate(an.sccs):
        if not an.tops[i]:
            continue
        p = max(an.tops[i]) % 2
        length = an.chains[i][p]
        value = length - 1 if (length - 1) % 2 == p else length
        _lift_component(B, an.succ, list(c), value, new)
    return NormalizedAutomaton(B.with_ranks(new), N.bottom, N.productive)


from .embedding import AdmitResult, Verdict, admits_oracle  # noqa: E402  (re-export)
