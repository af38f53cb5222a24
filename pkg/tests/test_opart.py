"""Ordered-partition model: parsing, enumeration, classes, traces, forms."""

import pytest

from opstats.opart import (
    BoundExceeded,
    OrderedPartition,
    classify,
    cinv,
    enumerate_op,
    enumerate_p,
    form,
    format_partition,
    inv,
    iter_blocks,
    iter_blocks_all,
    parse,
    perm_of,
    trace,
)
from opstats.qnum import ordered_partition_count, stirling2

EXAMPLE = "6,8/5/1,4,7/3,9/2"


def test_parse_format_roundtrip():
    pi = parse(EXAMPLE)
    assert pi.blocks == ((6, 8), (5,), (1, 4, 7), (3, 9), (2,))
    assert format_partition(pi) == EXAMPLE
    assert parse("1,2").blocks == ((1, 2),)
    assert pi.n == 9 and pi.k == 5


def test_parse_errors():
    with pytest.raises(ValueError, match="two blocks"):
        parse("1/1,2")
    with pytest.raises(ValueError, match="missing"):
        parse("1,3")
    with pytest.raises(ValueError, match="empty"):
        parse("1//2")
    with pytest.raises(ValueError, match="non-positive"):
        parse("0,1")
    with pytest.raises(ValueError, match="bad element"):
        parse("1,x")
    with pytest.raises(ValueError):
        parse("")


def test_enumerate_op_small():
    assert {format_partition(p) for p in enumerate_op(2, 2)} == {"1/2", "2/1"}
    assert sum(1 for _ in enumerate_op(3)) == 13
    assert sum(1 for _ in enumerate_op(4)) == 75
    assert list(enumerate_op(0)) == [OrderedPartition(())]


def test_enumerate_op_counts_match_stirling():
    for n in range(7):
        for k in range(n + 1):
            got = sum(1 for _ in enumerate_op(n, k))
            assert got == ordered_partition_count(n, k)


def test_enumeration_no_duplicates():
    for n in range(7):
        seen = list(iter_blocks_all(n))
        assert len(seen) == len(set(seen)) == ordered_partition_count(n)
        per_k = list(iter_blocks(n, max(n, 1) // 2 + 1)) if n else []
        assert len(per_k) == len(set(per_k))


def test_enumeration_routes_agree():
    # the per-k recursion and the all-k recursion cover the same sets
    for n in range(7):
        by_all = {}
        for blocks in iter_blocks_all(n):
            by_all.setdefault(len(blocks), set()).add(blocks)
        for k in range(n + 1):
            assert set(iter_blocks(n, k)) == by_all.get(k, set())


def test_enumerate_p():
    got = {format_partition(p) for p in enumerate_p(3, 2)}
    assert got == {"1,2/3", "1,3/2", "1/2,3"}
    assert sum(1 for _ in enumerate_p(4, 2)) == 7
    for n in range(1, 7):
        assert list(enumerate_p(n, 1)) == [OrderedPartition((tuple(range(1, n + 1)),))]
        for k in range(n + 1):
            assert sum(1 for _ in enumerate_p(n, k)) == stirling2(n, k)


def test_enumerate_p_is_canonical():
    for n in range(1, 7):
        for k in range(1, n + 1):
            for pi in enumerate_p(n, k):
                assert perm_of(pi) == tuple(range(1, k + 1))
                assert inv(pi) == 0


def test_desk_bound():
    with pytest.raises(BoundExceeded):
        enumerate_op(11)
    # force_large lifts the bound (consume only the first element)
    stream = enumerate_op(11, force_large=True)
    assert next(iter(stream)).n == 11


def test_classify_example():
    pi = parse("3,5/2,4,6/1/7,8")
    t = classify(pi)
    assert t.openers == {2, 3, 7}
    assert t.closers == {5, 6, 8}
    assert t.singletons == {1}
    assert t.transients == {4}


def test_classify_edge_cases():
    t = classify(parse("1/2/3"))
    assert t.singletons == {1, 2, 3}
    assert not (t.openers or t.closers or t.transients)
    t = classify(parse("1,2,3,4"))
    assert t.openers == {1} and t.closers == {4} and t.transients == {2, 3}


def test_trace_and_form_example():
    pi = parse("6/3,5,7/1,4,10/9/2,8")
    assert trace(pi, 6) == (
        ((6,), True),
        ((3, 5), False),
        ((1, 4), False),
        ((2,), False),
    )
    f = form(pi)
    assert f[0] == (0, 0)
    assert f[6] == (1, 3)
    assert f[10] == (5, 0)
    with pytest.raises(ValueError):
        trace(pi, 11)


def test_form_follows_class_moves():
    # the four moves: opener (c,o)->(c,o+1), singleton -> (c+1,o),
    # transient -> (c,o), closer -> (c+1,o-1)
    for n in range(1, 8):
        for blocks in iter_blocks_all(n):
            pi = OrderedPartition._unchecked(blocks)
            t = classify(pi)
            f = form(pi)
            for i in range(1, n + 1):
                c, o = f[i - 1]
                if i in t.openers:
                    expect = (c, o + 1)
                elif i in t.singletons:
                    expect = (c + 1, o)
                elif i in t.transients:
                    expect = (c, o)
                else:
                    expect = (c + 1, o - 1)
                assert f[i] == expect


def test_perm_examples():
    pi = parse(EXAMPLE)
    assert perm_of(pi) == (5, 4, 1, 3, 2)
    assert inv(pi) == 8
    assert cinv(pi) == 2
    assert perm_of(parse("1,2/3/4,5")) == (1, 2, 3)
    assert inv(parse("1,2/3/4,5")) == 0
    # reversing a canonical 3-block partition maximizes inversions
    assert inv(parse("4,5/3/1,2")) == 3


def test_perm_identity_iff_inv_free():
    for n in range(1, 6):
        canonical = {p.blocks for k in range(n + 1) for p in enumerate_p(n, k)}
        for blocks in iter_blocks_all(n):
            pi = OrderedPartition._unchecked(blocks)
            assert (inv(pi) == 0) == (blocks in canonical)
