"""
The three automata above everything else
========================================

Past the ordinal names sit three tops. C(TOP) is complete for the
deterministic Delta^0_3 languages, C(TOP+1) for Pi^0_3, and C(TOP+2) is
Pi^1_1-complete. Each one is recognized by a syntactic pattern.
"""
from wadgetree import (C1, F01, F02, TOP2, ComposeOp, Index, build, classify, compose_automata,
                       detect_top_patterns, find_split)

# the tops arise by replicating simple automata along a flower
top0 = compose_automata(ComposeOp.krep(Index(0, 1)), [build(C1), build(C1), build(F02)])
top1 = compose_automata(ComposeOp.krep(Index(0, 0)), [build(C1), build(F01)])

for label, A in (("C1 -(0,1)-> C1, F(0,2)", top0), ("C1 -(0,0)-> F(0,1)", top1), ("C(TOP+2)", build(TOP2))):
    r = classify(A)
    print(f"{label}: {r.canonical_name}, {r.borel.value}, patterns {detect_top_patterns(A)}")

# the highest top is witnessed by a split: one letter, two loops, opposite parities
A = build(TOP2)
s = find_split(A)
print(f"split at {A.labels[s.state]} on {s.letter!r}: left loop tops {sorted(s.left_profile)}, "
      f"right loop tops {sorted(s.right_profile)}")
