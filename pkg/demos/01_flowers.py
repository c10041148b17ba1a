"""
Flowers and the index hierarchy
===============================

A flower is a bundle of loops through one state whose top ranks climb and
alternate in parity. The longest flower fixes how many ranks any
equivalent deterministic automaton needs.
"""
from wadgetree import (SATURATED, Index, build_flower, canonicalize, classify, max_flower,
                       max_weak_flower, serialize_automaton)

# the (1,4)-flower: four petals ranked 1..4 plus an accepting sink
F = build_flower(Index(1, 4))
print(serialize_automaton(F))

# its longest flower is itself, so the index cannot be lowered
print("max flower:", max_flower(F))
print("deterministic index:", *classify(F).det_index)

# petals share one component, so the weak flowers saturate
print("weak flowers saturate:", max_weak_flower(F) is SATURATED)

# every flower is a canonical automaton in its own right
for i in (Index(0, 1), Index(1, 2), Index(0, 2), Index(1, 3)):
    print(f"F{i} ->", canonicalize(build_flower(i)))
