import itertools

import pytest
from hypothesis import given, strategies as st

from dynplanar.order import Order, UnknownElement


def build(pairs):
    o = Order()
    for a, b in pairs:
        o = o.register_pair(a, b)
    return o


def brute_sum(elements):
    # rank arithmetic capped at the largest rank
    n = len(elements)
    return {(elements[i + j], elements[i], elements[j]) for i in range(n) for j in range(n) if i + j < n}


def test_order_from_insert_stream():
    o = build([(9, 7), (4, 7), (4, 9), (4, 8)])
    assert o.elements == (9, 7, 4, 8)
    assert o.leq(9, 4)
    assert not o.leq(8, 7)
    assert o.ordinal(9) == 0
    assert o.ordinal(8) == 3


def test_sums_on_longer_order():
    o = Order()
    for x in (9, 7, 4, 8, 3, 5, 1, 2, 6):
        o = o.register(x)
    assert o.add(7, 4) == 8
    assert o.add(9, 7) == 7
    assert o.add(8, 5) == 6
    assert o.add(1, 2) is None


def test_first_element_is_its_own_sum():
    o = Order().register_pair(9, 7)
    assert o.min == 9
    assert (9, 9, 9) in o.relation_sum()
    # a later element never sums to itself twice
    assert (7, 7, 7) not in o.relation_sum()


def test_reregistering_changes_nothing():
    o = build([(9, 7), (4, 7)])
    again = o.register_pair(4, 7)
    assert again is o
    assert again.relation_sum() == o.relation_sum()


def test_unknown_symbols():
    o = build([(1, 2)])
    with pytest.raises(UnknownElement):
        o.leq(1, 3)
    with pytest.raises(UnknownElement):
        o.add(5, 1)
    with pytest.raises(UnknownElement):
        o.ordinal("x")


def test_subtraction_reads_sum_backwards():
    o = Order()
    for x in "abcdef":
        o = o.register(x)
    assert o.sub("e", "c") == "c"
    assert o.sub("f", "a") == "f"
    assert o.sub("b", "d") is None


symbols = st.lists(st.integers(0, 40), min_size=1, max_size=25)


@given(symbols)
def test_sum_matches_rank_arithmetic(xs):
    o = Order()
    for x in xs:
        o = o.register(x)
    assert o.relation_sum() == brute_sum(o.elements)
    for x in o:
        assert o.add(o.min, x) == x
        assert o.add(x, o.min) == x


@given(symbols)
def test_order_is_total_and_stable(xs):
    o = Order()
    ranks = {}
    for x in xs:
        o = o.register(x)
        for y, r in ranks.items():
            assert o.ordinal(y) == r
        ranks[x] = o.ordinal(x)
    els = o.elements
    assert len(set(els)) == len(els)
    for x, y in itertools.product(els, els):
        assert o.leq(x, y) == (o.ordinal(x) <= o.ordinal(y))
        if o.leq(x, y) and o.leq(y, x):
            assert x == y


@given(symbols, st.integers(0, 40))
def test_register_leaves_old_snapshot_alone(xs, extra):
    o = Order()
    for x in xs:
        o = o.register(x)
    before = (o.elements, o.relation_sum(), o.relation_o())
    o.register(extra)
    assert (o.elements, o.relation_sum(), o.relation_o()) == before
