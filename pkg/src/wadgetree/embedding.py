"""Bounded search for an embedding of one automaton into another.

Only used to cross-check the pattern detectors. A path of the host is
abstracted to its end state and the highest rank seen before reaching it;
nothing else about a path matters to the embedding conditions. A pair of
branching paths is a common prefix, one transition taken in both
directions, and two continuations, each segment at most ``path_bound`` long.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .automaton import DetTreeAutomaton
from .graphs import tarjan_scc
from .productivity import as_normalized

NONE_YET = -1  # max rank of an empty path segment


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class AdmitResult:
    verdict: Verdict
    # guest copy -> host state, for YES
    certificate: Optional[dict] = field(default=None, compare=False)


class _Budget(Exception):
    pass


def _paths(A: DetTreeAutomaton, bound: int):
    """seg[u] = {(v, m)}: paths of length 0..bound from u, m the max rank strictly before v."""
    seg = []
    for u in A.states():
        seen = {(u, NONE_YET)}
        frontier = [(u, NONE_YET)]
        for _ in range(bound):
            nxt = []
            for x, m in frontier:
                m2 = max(m, A.ranks[x])
                for pair in A.delta[x]:
                    for t in pair:
                        if (t, m2) not in seen:
                            seen.add((t, m2))
                            nxt.append((t, m2))
            frontier = nxt
        seg.append(seen)
    return seg


def _branching_pairs(A: DetTreeAutomaton, seg):
    """pairs[u] = {(v0, m0, v1, m1)} realisable by branching paths out of u (both orders)."""
    out = []
    for u in A.states():
        pairs = set()
        for r, mp in seg[u]:
            head = max(mp, A.ranks[r])
            for left, right in A.delta[r]:
                for v0, m0 in seg[left]:
                    for v1, m1 in seg[right]:
                        a, b = max(head, m0), max(head, m1)
                        pairs.add((v0, a, v1, b))
                        pairs.add((v1, b, v0, a))
        out.append(pairs)
    return out


def _loop_parity_ok(edges_ab: list[tuple[int, int, int, int]]) -> bool:
    """edges (src, dst, guest weight, host weight): every closed walk has equal top-parity on both sides."""
    bs = sorted({e[2] for e in edges_ab})
    as_ = sorted({e[3] for e in edges_ab})
    for x in bs:
        for y in as_:
            if x % 2 == y % 2:
                continue
            sub = [e for e in edges_ab if e[2] <= x and e[3] <= y]
            nodes = sorted({e[0] for e in sub} | {e[1] for e in sub})
            succ: dict[int, list[int]] = {v: [] for v in nodes}
            for e in sub:
                succ[e[0]].append(e[1])
            comp = {}
            for i, c in enumerate(tarjan_scc(nodes, lambda v: succ[v])):
                for v in c:
                    comp[v] = i
            hit_b = {comp[e[0]] for e in sub if e[2] == x and comp[e[0]] == comp[e[1]]}
            hit_a = {comp[e[0]] for e in sub if e[3] == y and comp[e[0]] == comp[e[1]]}
            if hit_b & hit_a:
                return False
    return True


def admits_oracle(A, B, path_bound: int, budget: int = 200_000) -> AdmitResult:
    """Does the host A admit the guest B? YES with a certificate, NO only when the bound is exhaustive.

    The guest's component dag is unravelled into a tree, so each component
    copy is embedded independently once the images of its entry states are
    fixed; results are memoised on (component, entry images). The dead state
    is an ordinary rank-1 state on both sides: a guest copy of it needs a
    pair of rejecting loops in the host.
    """
    if path_bound < 1:
        raise ValueError("path_bound must be at least 1")
    host, guest = as_normalized(A).automaton, as_normalized(B).automaton
    seg = _paths(host, path_bound)
    pairs = _branching_pairs(host, seg)
    succ = [sorted(guest.successors(q)) for q in guest.states()]
    comp = {}
    comps = tarjan_scc(guest.states(), lambda v: succ[v])
    for i, cc in enumerate(comps):
        for v in cc:
            comp[v] = i
    moves = [sorted(set(guest.delta[q])) for q in guest.states()]

    def options(u, t0, t1, inside0, inside1):
        # host weights only matter on edges that stay in the component
        out = {(v0, m0 if inside0 else None, v1, m1 if inside1 else None)
               for v0, m0, v1, m1 in pairs[u] if t0 != t1 or v0 == v1}
        return sorted(out, key=lambda o: (o[0], o[2], o[1] or 0, o[3] or 0))

    memo: dict[tuple, Optional[dict]] = {}
    nodes = [0]

    def solve(k: int, entries: tuple) -> Optional[dict]:
        """Embed component k (and everything below) given entry images; returns state images or None."""
        key = (k, entries)
        if key in memo:
            return memo[key]
        memo[key] = None  # components are acyclic in the dag, so this is never read early
        members = set(comps[k])
        emb = dict(entries)
        order = []
        seen = set(emb)
        todo = sorted(emb)
        while todo:
            q = todo.pop(0)
            order.append(q)
            for t in succ[q]:
                if t in members and t not in seen:
                    seen.add(t)
                    todo.append(t)
        work = [(q, pair) for q in order for pair in moves[q]]
        chosen: list[tuple[int, int, int, int]] = []
        exits: dict[int, dict[int, int]] = {}

        def step(i: int) -> Optional[dict]:
            nodes[0] += 1
            if nodes[0] > budget:
                raise _Budget
            if i == len(work):
                below = {}
                for child, ent in sorted(exits.items()):
                    sub = solve(child, tuple(sorted(ent.items())))
                    if sub is None:
                        return None
                    below.update({(child, q): v for q, v in sub.items()})
                return {**{(k, q): v for q, v in emb.items()}, **below}
            q, (t0, t1) = work[i]
            u, w = emb[q], guest.ranks[q]
            in0, in1 = t0 in members, t1 in members
            for v0, m0, v1, m1 in options(u, t0, t1, in0, in1):
                added, ext = [], []
                ok = True
                for t, v, inside in ((t0, v0, in0), (t1, v1, in1)):
                    table = emb if inside else exits.setdefault(comp[t], {})
                    if t in table:
                        ok = ok and table[t] == v
                    else:
                        table[t] = v
                        (added if inside else ext).append((table, t))
                new = [(q, t, w, m) for t, m, inside in ((t0, m0, in0), (t1, m1, in1)) if inside]
                if ok:
                    chosen.extend(new)
                    if not new or _loop_parity_ok(chosen):
                        res = step(i + 1)
                        if res is not None:
                            return res
                    del chosen[len(chosen) - len(new):]
                for table, t in added + ext:
                    del table[t]
            return None

        result = step(0)
        if result is None:
            memo[key] = None
            return None
        memo[key] = {q: v for (kk, q), v in result.items() if kk == k}
        # keep the full certificate for the root call
        memo[("full",) + key] = result
        return memo[key]

    exhaustive = path_bound >= host.size * host.size
    root = comp[guest.initial]
    try:
        for u in host.states():
            if solve(root, ((guest.initial, u),)) is not None:
                full = memo[("full", root, ((guest.initial, u),))]
                cert = {f"{guest.labels[q]}@{kk}": host.labels[v] for (kk, q), v in sorted(full.items())}
                return AdmitResult(Verdict.YES, cert)
    except _Budget:
        return AdmitResult(Verdict.UNKNOWN)
    return AdmitResult(Verdict.NO if exhaustive else Verdict.UNKNOWN)
