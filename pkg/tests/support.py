"""Random fixtures and brute-force oracles shared by the test modules.

The oracles deliberately avoid the library's graph machinery: loops are
found by enumerating simple cycles or simple paths directly.
"""
from __future__ import annotations

import random
from functools import lru_cache

import pytest
from hypothesis import strategies as st

from wadgetree.automaton import DetTreeAutomaton
from wadgetree.names import CanonicalName, name_parse, name_validate
from wadgetree.ordinals import Index, from_parts, top


def random_automaton(rng: random.Random, max_states: int = 7, max_letters: int = 3,
                     max_rank: int = 3) -> DetTreeAutomaton:
    n = rng.randint(1, max_states)
    k = rng.randint(1, max_letters)
    alphabet = tuple("abc"[:k])
    ranks = tuple(rng.randint(0, max_rank) for _ in range(n))
    rows = tuple(tuple((rng.randrange(n), rng.randrange(n)) for _ in range(k)) for _ in range(n))
    return DetTreeAutomaton(alphabet, tuple(f"s{i}" for i in range(n)), ranks, 0, rows)


def successors(A: DetTreeAutomaton) -> list[set[int]]:
    return [{t for pair in A.delta[q] for t in pair} for q in A.states()]


def reach_from(succ, start, allowed=None) -> set[int]:
    seen = set()
    todo = [s for s in start if allowed is None or s in allowed]
    while todo:
        v = todo.pop()
        if v in seen:
            continue
        seen.add(v)
        todo.extend(w for w in succ[v] if allowed is None or w in allowed)
    return seen


def simple_cycles(succ) -> list[tuple[int, ...]]:
    """Every simple cycle, listed once, starting from its smallest state."""
    out = []

    def extend(start, path, on_path):
        for w in sorted(succ[path[-1]]):
            if w == start:
                out.append(tuple(path))
            elif w > start and w not in on_path:
                on_path.add(w)
                path.append(w)
                extend(start, path, on_path)
                path.pop()
                on_path.discard(w)

    for s in range(len(succ)):
        extend(s, [s], {s})
    return out


def cycle_top(A: DetTreeAutomaton, cycle) -> int:
    return max(A.ranks[q] for q in cycle)


# ---------------------------------------------------------------- loop oracles

def loop_tops_through(A: DetTreeAutomaton, q: int) -> set[int]:
    """Top ranks of closed walks through q, by path search below each candidate rank."""
    succ = successors(A)
    out = set()
    for r in set(A.ranks):
        low = {p for p in A.states() if A.ranks[p] <= r}
        if q not in low:
            continue
        plus = lambda x: reach_from(succ, succ[x], low)
        from_q = plus(q)
        for p in low:
            if A.ranks[p] != r:
                continue
            if (p == q and q in from_q) or (p != q and p in from_q and q in plus(p)):
                out.add(r)
                break
    return out


def alternating_chain(tops: set[int], last_parity: int) -> int:
    """Longest strictly increasing rank chain of alternating parity ending with the given parity."""
    best = 0
    for hi in (t for t in tops if t % 2 == last_parity):
        length, cur = 1, hi
        while True:
            below = [t for t in tops if t < cur and t % 2 != cur % 2]
            if not below:
                break
            cur = max(below)
            length += 1
        best = max(best, length)
    return best


def brute_maximal_flowers(A: DetTreeAutomaton) -> list[Index]:
    found = set()
    for q in A.states():
        tops = loop_tops_through(A, q)
        for p in (0, 1):
            length = alternating_chain(tops, p)
            if length:
                kappa = length - 1 if (length - 1) % 2 == p else length
                found.add(Index(kappa - length + 1, kappa))
    if not found:
        return []
    span = max(f.span for f in found)
    return sorted(f for f in found if f.span == span)


def brute_weak_chains(A: DetTreeAutomaton):
    """(longest weak flower starting accepting, starting rejecting) or 'saturated'."""
    succ = successors(A)
    loops = {}
    for c in simple_cycles(succ):
        region = frozenset(reach_from(succ, [c[0]]))
        loops.setdefault(region, set()).add(cycle_top(A, c) % 2)
    if any(len(p) == 2 for p in loops.values()):
        return "saturated"
    items = [(region, next(iter(p))) for region, p in loops.items()]

    @lru_cache(maxsize=None)
    def longest(i):
        region, pol = items[i]
        best = 1
        for j, (r2, p2) in enumerate(items):
            if p2 != pol and r2 <= region and j != i:
                best = max(best, 1 + longest(j))
        return best

    out = [0, 0]
    for i, (_, pol) in enumerate(items):
        out[pol] = max(out[pol], longest(i))
    return tuple(out)


def edge_tops(A: DetTreeAutomaton, q: int, t: int) -> set[int]:
    """Top ranks of closed walks that leave q along the edge q -> t, by simple path search."""
    out = set()
    succ = successors(A)
    for r in set(A.ranks):
        low = {p for p in A.states() if A.ranks[p] <= r}
        if q not in low or t not in low:
            continue
        from_t = reach_from(succ, [t], low)
        if q not in from_t:
            continue
        # some rank-r state on a walk t ->* p ->* q
        if A.ranks[q] == r or any(A.ranks[p] == r and q in reach_from(succ, [p], low) for p in from_t):
            out.add(r)
    return out


def brute_split_exists(A: DetTreeAutomaton) -> bool:
    for q in A.states():
        for l, r in A.delta[q]:
            p0, p1 = edge_tops(A, q, l), edge_tops(A, q, r)
            for a, b in ((p0, p1), (p1, p0)):
                if any(hi % 2 == 1 and any(lo % 2 == 0 and lo < hi for lo in b) for hi in a):
                    return True
    return False


def brute_replicated(A: DetTreeAutomaton, polarity: int) -> set[int]:
    succ = successors(A)
    sources = set()
    for q in A.states():
        for pair in A.delta[q]:
            for d in (0, 1):
                if any(r % 2 == polarity for r in edge_tops(A, q, pair[d])):
                    sources.add(pair[1 - d])
    return reach_from(succ, sources)


# ---------------------------------------------------------------- names

ROUND_TRIP_NAMES = [
    # finite
    "C(1)", "D(1)", "E(1)", "C(2)", "D(2)", "E(2)", "C(3)", "D(3)", "E(3)", "C(4)", "D(5)", "E(6)",
    # powers of w below w^w
    "C(w)", "C(w + 1)", "C(w + 2)", "C(w*2)", "C(w*2 + 3)", "C(w^[2])", "C(w^[2] + w + 1)", "C(w^[3])",
    # flowers
    "C(w^[w])", "D(w^[w])", "E(w^[w])", "C(w^[w+1])", "D(w^[w+1])", "E(w^[w+2])",
    # w^w * a1 + a0
    "C(w^[w] + 1)", "D(w^[w] + 2)", "E(w^[w] + 1)", "C(w^[w]*2)", "D(w^[w]*2)",
    "C(w^[w+1] + w^[w])", "C(w^[w] + w)",
    # w^(w*2) and mixed
    "C(w^[w*2])", "C(w^[w*2] + 1)", "C(w^[w*2]*2)", "C(w^[w*2+1])", "C(w^[w*2] + w^[w] + 3)",
    "C(w^[w*2] + w)", "C(w^[w*2] + w^[w])",
    # above the branching levels
    "C(TOP)", "C(TOP+1)", "C(TOP+2)",
]

CURATED = [name_parse(s) for s in
           [f"{L}({n})" for n in range(1, 5) for L in "CDE"]
           + ["C(w)", "C(w + 1)", "C(w*2)", "C(w^[2])", "C(w^[w])", "D(w^[w])", "E(w^[w])",
              "C(w^[w] + 1)", "D(w^[w] + 1)", "C(w^[w]*2)", "C(w^[w+1])", "D(w^[w+1])",
              "C(w^[w*2])", "C(w^[w*2] + w^[w] + 3)"]]


def _poly(rng: random.Random, max_exp: int):
    if rng.random() < 0.5:
        return ()
    ks = sorted(rng.sample(range(max_exp + 1), rng.randint(1, min(2, max_exp + 1))), reverse=True)
    return tuple((k, rng.randint(1, 2)) for k in ks)


def random_name(rng: random.Random, tops: bool = False) -> CanonicalName:
    if tops and rng.random() < 0.1:
        return CanonicalName("C", top(rng.randint(0, 2)))
    while True:
        a2 = _poly(rng, 2) if rng.random() < 0.3 else ()
        o = from_parts(a2, _poly(rng, 2), _poly(rng, 2))
        if o.is_zero:
            continue
        n = CanonicalName(rng.choice("CDE"), o)
        if name_validate(n):
            return n


names_st = st.integers(min_value=0, max_value=2**32 - 1).map(
    lambda seed: random_name(random.Random(seed), tops=True))
plain_names_st = st.integers(min_value=0, max_value=2**32 - 1).map(
    lambda seed: random_name(random.Random(seed)))


# ---------------------------------------------------------------- nonemptiness oracles

def strategy_graph(A: DetTreeAutomaton, choice: dict[int, str], domain) -> list[set[int]]:
    succ = [set() for _ in A.states()]
    for q in domain:
        succ[q] = set(A.step(q, choice[q]))
    return succ


def strategy_is_sound(A: DetTreeAutomaton, nonempty, choice: dict[int, str]) -> bool:
    """Every chosen transition stays in the claimed region and every cycle it allows is accepting."""
    for q in nonempty:
        if not set(A.step(q, choice[q])) <= set(nonempty):
            return False
    succ = strategy_graph(A, choice, nonempty)
    return all(cycle_top(A, c) % 2 == 0 for c in simple_cycles(succ))


def brute_nonempty(A: DetTreeAutomaton) -> set[int]:
    """Union over all positional letter choices of the states all of whose reachable cycles accept."""
    from itertools import product
    out = set()
    for letters in product(A.alphabet, repeat=A.size):
        choice = dict(enumerate(letters))
        succ = strategy_graph(A, choice, A.states())
        bad = {q for c in simple_cycles(succ) if cycle_top(A, c) % 2 for q in c}
        for q in A.states():
            if not reach_from(succ, [q]) & bad:
                out.add(q)
    return out


# ---------------------------------------------------------------- acceptance reporting

ACCEPTANCE = pytest.StashKey[list]()
