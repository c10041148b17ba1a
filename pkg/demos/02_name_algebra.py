"""
Names compose like the automata they stand for
==============================================

Every operation on automata has a counterpart on names. Here we compute a
few results symbolically and confirm each one by building the automata,
composing them, and canonicalizing the result.
"""
from wadgetree import (C1, C3, D1, F02, ComposeOp, and_name, arrow_name, build, canonicalize,
                       compose_automata, name_parse, oplus_name, or_name)

cases = [
    ("or", ComposeOp.OR, or_name, C1, D1),
    ("oplus", ComposeOp.OPLUS, oplus_name, C1, D1),
    ("oplus", ComposeOp.OPLUS, oplus_name, D1, C1),
    ("arrow", ComposeOp.ARROW, arrow_name, C1, C3),
    ("and", ComposeOp.AND, and_name, F02, F02),
    ("and", ComposeOp.AND, and_name, name_parse("C(w + 1)"), name_parse("C(w + 1)")),
]
for label, op, f, a, b in cases:
    symbolic = f(a, b)
    built = canonicalize(compose_automata(op, [build(a), build(b)]))
    states = compose_automata(op, [build(a), build(b)]).size
    print(f"{a} {label} {b} = {symbolic}   automaton route: {built} ({states} states)")
    assert symbolic == built

# powers of C3 walk up the finite levels two at a time
x = C3
for k in range(1, 5):
    print(f"C3^{k} = {x}")
    x = and_name(x, C3)
