"""Small directed-graph helpers over dense integer vertices."""
from __future__ import annotations

from typing import Callable, Iterable, Sequence


def tarjan_scc(vertices: Iterable[int], succ: Callable[[int], Iterable[int]]) -> list[list[int]]:
    """Strongly connected components, iterative Tarjan.

    Components come out in reverse topological order (sinks first).
    """
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    return out


def cyclic_components(vertices: Sequence[int], succ: Callable[[int], Iterable[int]]) -> list[list[int]]:
    """SCCs of the induced subgraph that carry at least one edge."""
    allowed = set(vertices)

    def inner(v):
        return [w for w in succ(v) if w in allowed]

    comps = tarjan_scc(sorted(allowed), inner)
    return [c for c in comps if len(c) > 1 or c[0] in inner(c[0])]


def reach(start: Iterable[int], succ: Callable[[int], Iterable[int]]) -> set[int]:
    todo = list(start)
    seen = set(todo)
    while todo:
        v = todo.pop()
        for w in succ(v):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen
