import itertools

import pytest
from hypothesis import given, settings

from wadgetree.names import (C1, C3, D1, D2, E1, F01, F02, F12, TOP0, TOP1, TOP2, C, D, E,
                             NameError_, and_name, arrow_name, bminus_oplus_name, components,
                             flower_index, flower_name, is_simple, name_leq, name_max, name_parse,
                             name_print, name_validate, oplus_name, or_name, recompose)
from wadgetree.ordinals import Index, Order, ord_parse, wpow

from support import CURATED, ROUND_TRIP_NAMES, names_st, plain_names_st

p = name_parse


def power(a, k):
    out = a
    for _ in range(k - 1):
        out = and_name(out, a)
    return out


# ---------------------------------------------------------------- parsing

@pytest.mark.parametrize("text", ROUND_TRIP_NAMES)
def test_print_parse(text):
    assert name_print(p(text)) == text


@pytest.mark.parametrize("bad", [
    "C(0)", "D(w)", "E(w + 1)", "D(TOP)", "E(w^[w] + w)", "D(w^[w*2])", "X(1)", "C1", "C(w^2)",
])
def test_rejects(bad):
    with pytest.raises(NameError_):
        p(bad)


def test_constants():
    assert p("C(w^[w])") == F01 and p("D(w^[w])") == F12 and p("C(w^[w+1])") == F02
    assert str(TOP0) == "C(TOP)" and str(TOP2) == "C(TOP+2)"


# ---------------------------------------------------------------- order

@given(names_st, names_st, names_st)
@settings(max_examples=300)
def test_order_axioms(a, b, c):
    ab = name_leq(a, b)
    assert name_leq(b, a) is ab.flip()
    assert (ab is Order.EQ) == (a == b)
    if ab is Order.INCOMPARABLE:
        assert a.ordinal == b.ordinal and {a.letter, b.letter} == {"C", "D"}
    le = lambda x, y: name_leq(x, y) in (Order.LT, Order.EQ)
    if le(a, b) and le(b, c):
        assert le(a, c)


def test_c_and_d_sit_below_e():
    for a in ("1", "3", "w^[w]", "w^[w+2] + 1"):
        o = ord_parse(a)
        assert name_leq(C(o), D(o)) is Order.INCOMPARABLE
        assert name_leq(C(o), E(o)) is Order.LT and name_leq(D(o), E(o)) is Order.LT


# ---------------------------------------------------------------- identities from the definitions of canonical automata

@pytest.mark.parametrize("got, want", [
    (lambda: or_name(C1, D1), "E(1)"),
    (lambda: oplus_name(C1, E1), "C(2)"),
    (lambda: oplus_name(D1, E1), "D(2)"),
    (lambda: oplus_name(E1, E1), "E(2)"),
    (lambda: oplus_name(C1, oplus_name(E1, E1)), "C(3)"),
    (lambda: arrow_name(C1, C3), "C(w)"),
    (lambda: arrow_name(C1, oplus_name(C1, p("C(w)"))), "C(w^[2])"),
    (lambda: arrow_name(C1, oplus_name(C1, p("C(w^[2])"))), "C(w^[3])"),
    (lambda: oplus_name(C1, p("C(w)")), "C(w + 1)"),
    (lambda: oplus_name(D2, p("C(w)")), "C(w + 2)"),
    (lambda: oplus_name(p("C(w)"), p("C(w)")), "C(w*2)"),
    (lambda: oplus_name(C1, p("E(w^[w])")), "C(w^[w] + 1)"),
    (lambda: oplus_name(D2, p("E(w^[w])")), "D(w^[w] + 2)"),
    (lambda: or_name(F01, F12), "E(w^[w])"),
    (lambda: bminus_oplus_name(p("C(w)"), D1), "D(1)"),
    (lambda: bminus_oplus_name(p("C(w^[3])"), C1), "C(w^[3])"),
    (lambda: or_name(C(3), C(5)), "C(5)"),
    (lambda: oplus_name(D1, C1), "D(2)"),
    (lambda: and_name(F02, p("D(w^[w+1])")), "D(w^[w+3])"),
    (lambda: arrow_name(C1, F02), "C(w^[w*2])"),
    (lambda: arrow_name(C(5), D1), "C(5)"),
])
def test_definitional_identities(got, want):
    assert str(got()) == want


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_flower_powers(k):
    assert power(C3, k) == C(2 * k + 1)
    assert power(F02, k) == flower_name(Index(0, 2 * k))


@pytest.mark.parametrize("exp", [(0, 1), (0, 2), (2, 0), (2, 1)])
@pytest.mark.parametrize("k", [2, 3])
def test_replicator_powers(exp, k):
    # (C1 + C_(w^e))^k = C1 + C_(w^e * k)
    base = oplus_name(C1, C(wpow(*exp)))
    assert power(base, k) == oplus_name(C1, C(wpow(*exp, k)))


# ---------------------------------------------------------------- algebraic laws

@given(plain_names_st, plain_names_st)
@settings(max_examples=300)
def test_or_is_the_least_upper_bound(a, b):
    j = or_name(a, b)
    assert j == or_name(b, a)
    assert name_leq(a, j) in (Order.LT, Order.EQ) and name_leq(b, j) in (Order.LT, Order.EQ)
    if name_leq(a, b) in (Order.LT, Order.EQ):
        assert j == b


@given(plain_names_st)
def test_or_is_idempotent(a):
    assert or_name(a, a) == a


@given(plain_names_st, plain_names_st, plain_names_st)
@settings(max_examples=200)
def test_or_is_associative(a, b, c):
    assert or_name(or_name(a, b), c) == or_name(a, or_name(b, c))
    assert name_max([a, b, c]) == or_name(a, or_name(b, c))


@given(plain_names_st, plain_names_st)
@settings(max_examples=300)
def test_and_is_commutative(a, b):
    assert and_name(a, b) == and_name(b, a)


@given(plain_names_st)
def test_and_units(a):
    # C1 accepts every tree and D1 none
    assert and_name(C1, a) == a
    assert and_name(D1, a) == D1


@given(plain_names_st, plain_names_st)
@settings(max_examples=300)
def test_oplus_reaches_its_right_side(a, b):
    r = oplus_name(a, b)
    assert name_leq(b, r) in (Order.LT, Order.EQ)
    assert name_validate(arrow_name(a, b))


def test_oplus_is_not_commutative():
    assert oplus_name(C1, D1) == C(2)
    assert oplus_name(D1, C1) == D(2)


def test_top_operands():
    assert or_name(TOP1, C1) == TOP1 and or_name(TOP0, TOP2) == TOP2
    for op in (and_name, oplus_name):
        for args in ((TOP1, C1), (C1, TOP0)):
            with pytest.raises(NameError_):
                op(*args)
    with pytest.raises(NameError_):
        arrow_name(C1, TOP2)


def test_curated_closure_is_canonical():
    for a, b in itertools.product(CURATED, repeat=2):
        for op in (or_name, and_name, oplus_name, arrow_name):
            assert name_validate(op(a, b))


# ---------------------------------------------------------------- components

@given(plain_names_st)
def test_components_recompose(a):
    comps = components(a)
    assert all(is_simple(s) for s in comps)
    assert recompose(comps) == a


@pytest.mark.parametrize("i", [Index(0, 0), Index(1, 1), Index(0, 1), Index(1, 2), Index(0, 4), Index(1, 5)])
def test_flower_names_invert(i):
    assert flower_index(flower_name(i)) == i


def test_top_names_are_ordered():
    assert name_leq(p("C(w^[w*2]*5 + 3)"), TOP0) is Order.LT
    assert name_leq(TOP0, TOP1) is Order.LT and name_leq(TOP1, TOP2) is Order.LT
