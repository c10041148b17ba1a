"""
Naming an arbitrary automaton
=============================

Random automata mostly land at the very top of the hierarchy, so draw
until one sits strictly between the trivial languages and the three tops,
then read off where it sits: the canonical name, the Borel class and the
rank budget.
"""
import random

from wadgetree import (C1, D1, canonical_names_by_state, canonicalize, classify, from_table,
                       normalize, serialize_automaton, wadge_compare)


def middling(A):
    n = canonicalize(A)
    return not n.is_top and n not in (C1, D1)


def draw(rng, size=5, letters=("a", "b")):
    states = [(f"s{i}", rng.randint(0, 3)) for i in range(size)]
    names = [s for s, _ in states]
    table = {(s, a): (rng.choice(names), rng.choice(names)) for s in names for a in letters}
    return from_table(list(letters), states, "s0", table)


rng = random.Random(11)
draws = iter(lambda: draw(rng), None)
A = next(filter(middling, draws))
print(serialize_automaton(A))

# states that some accepting run actually uses
N = normalize(A)
print("productive states:", *sorted(N.automaton.labels[q] for q in N.productive))

report = classify(A)
print("canonical name:", report.canonical_name)
print("Borel class:", report.borel.value, "(complete)" if report.complete else "")
print("deterministic index:", *report.det_index)

# each productive state has its own name; none exceeds the whole automaton
for label, name in sorted(canonical_names_by_state(A).items()):
    print(f"  {label}: {name}")

# the next such draw, compared against the first
B = next(filter(middling, draws))
print(canonicalize(A), wadge_compare(A, B).value, canonicalize(B))
