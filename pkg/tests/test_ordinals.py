import pytest
from hypothesis import given, strategies as st

from wadgetree.ordinals import (Index, Order, Ordinal, OrdinalError, from_parts, index_and,
                                index_compare, index_dual, index_from_chain, nat, ord_compare,
                                ord_decompose, ord_parse, ord_print, top, wpow)

exps = st.tuples(st.integers(0, 2), st.integers(0, 4))
ordinals = st.builds(
    lambda ts: Ordinal(tuple(sorted(ts.items(), reverse=True))),
    st.dictionaries(exps, st.integers(1, 3), max_size=4),
)
ordinals_or_top = ordinals | st.integers(0, 2).map(top)


@pytest.mark.parametrize("text", [
    "0", "1", "7", "w", "w*3", "w + 1", "w^[2]", "w^[2]*2 + w + 5", "w^[w]", "w^[w+1]*2",
    "w^[w*2]", "w^[w*2+3] + w^[w] + w", "TOP", "TOP+1", "TOP+2",
])
def test_print_parse_round_trip(text):
    assert ord_print(ord_parse(text)) == text


@pytest.mark.parametrize("text, printed", [("w^[1]", "w"), ("w*1", "w"), ("w^[w]*1", "w^[w]")])
def test_parse_accepts_long_forms(text, printed):
    assert ord_print(ord_parse(text)) == printed


@pytest.mark.parametrize("bad", [
    "w^2", "w + w", "1 + w", "w^[w*3]", "01", "w^[w]*0", "TOP+3", "", "w+1",
])
def test_parse_rejects(bad):
    with pytest.raises(OrdinalError):
        ord_parse(bad)


@given(ordinals_or_top)
def test_round_trip_property(a):
    assert ord_parse(ord_print(a)) == a


@given(ordinals_or_top, ordinals_or_top, ordinals_or_top)
def test_compare_is_a_total_order(a, b, c):
    assert ord_compare(a, b) is ord_compare(b, a).flip()
    assert (ord_compare(a, b) is Order.EQ) == (a == b)
    if a <= b and b <= c:
        assert a <= c


@given(ordinals, ordinals)
def test_addition_is_monotone_on_the_right(a, b):
    assert a + b >= b
    if b.terms:
        assert a + b > a


def test_landmarks_are_ordered():
    chain = [nat(1), nat(5), wpow(0, 1), wpow(0, 2), wpow(1, 0), wpow(1, 0) + nat(1),
             wpow(1, 1), wpow(2, 0), wpow(2, 0, 2), wpow(2, 4), top(0), top(1), top(2)]
    assert chain == sorted(chain)
    assert len(set(chain)) == len(chain)


def test_absorption():
    assert nat(3) + wpow(0, 1) == wpow(0, 1)
    assert wpow(0, 1) + wpow(1, 0) == wpow(1, 0)
    assert (wpow(1, 0) + nat(2)) + nat(1) == wpow(1, 0) + nat(3)


def test_decompose():
    a = ord_parse("w^[w*2]*2 + w^[w+1] + w + 3")
    d = ord_decompose(a)
    assert (d.a2, d.a1, d.a0) == (((0, 2),), ((1, 1),), ((1, 1), (0, 3)))
    assert from_parts(d.a2, d.a1, d.a0) == a
    with pytest.raises(OrdinalError):
        ord_decompose(top(0))


def test_top_rejects_addition():
    with pytest.raises(OrdinalError):
        top(0) + nat(1)


def test_index_basics():
    assert index_dual(Index(0, 2)) == Index(1, 3)
    assert index_dual(Index(1, 3)) == Index(0, 2)
    assert index_from_chain(3, 0) == Index(0, 2)
    assert index_from_chain(3, 1) == Index(1, 3)
    assert index_compare(Index(0, 1), Index(1, 2)) is Order.INCOMPARABLE
    assert index_compare(Index(0, 1), Index(0, 2)) is Order.LT
    with pytest.raises(OrdinalError):
        Index(2, 3)


# product of two flowers: the lemma on flowers gives (0,2)^k = (0,2k)
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_index_and_powers(k):
    acc = Index(0, 2)
    for _ in range(k - 1):
        acc = index_and(acc, Index(0, 2))
    assert acc == Index(0, 2 * k)


def test_index_and_small_cases():
    assert index_and(Index(0, 1), Index(0, 1)) == Index(0, 1)
    assert index_and(Index(1, 2), Index(1, 2)) == Index(1, 2)
    # chain (0,1) < (0,2) < (1,2) alternates odd, even, odd
    assert index_and(Index(0, 1), Index(1, 2)) == Index(1, 3)
    assert index_and(Index(0, 0), Index(1, 3)) == Index(1, 3)
