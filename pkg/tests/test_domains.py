"""Integer domain algebra checked against plain Python sets."""
import random

from eprimesat.domains import IntDomain


def rand_domain(rng, lo=-12, hi=12):
    vals = rng.sample(range(lo, hi + 1), rng.randint(0, 8))
    return IntDomain.values_of(vals), set(vals)


def test_of_normalizes_overlaps():
    d = IntDomain.of((1, 3), (2, 5), (7, 7), (8, 9))
    assert d.ranges == ((1, 5), (7, 9))
    assert d.size() == 8


def test_values_sorted_unique():
    d = IntDomain.values_of([5, 1, 3, 1, 2])
    assert list(d.values()) == [1, 2, 3, 5]


def test_empty():
    e = IntDomain.empty()
    assert e.is_empty() and e.size() == 0
    assert not e.contains(0)


def test_set_operations_match_python_sets():
    rng = random.Random(7)
    for _ in range(400):
        a, sa = rand_domain(rng)
        b, sb = rand_domain(rng)
        assert set(a.union(b).values()) == sa | sb
        assert set(a.intersect(b).values()) == sa & sb
        assert set(a.minus(b).values()) == sa - sb
        for v in range(-14, 15):
            assert a.contains(v) == (v in sa)
        if sa:
            assert a.min() == min(sa) and a.max() == max(sa)
            assert a.size() == len(sa)


def test_restrict_bounds():
    rng = random.Random(8)
    for _ in range(200):
        a, sa = rand_domain(rng)
        lo = rng.randint(-13, 13)
        hi = rng.randint(-13, 13)
        want = {v for v in sa if lo <= v <= hi}
        assert set(a.restrict_bounds(lo, hi).values()) == want


def test_remove_value():
    d = IntDomain.of((1, 5))
    assert list(d.remove_value(3).values()) == [1, 2, 4, 5]
    assert list(d.remove_value(9).values()) == [1, 2, 3, 4, 5]


def test_floor_member():
    # largest domain member <= v, None below the minimum
    d = IntDomain.of((1, 3), (8, 10))
    assert d.floor_member(0) is None
    assert d.floor_member(1) == 1
    assert d.floor_member(5) == 3
    assert d.floor_member(8) == 8
    assert d.floor_member(99) == 10


def test_floor_member_matches_sets():
    rng = random.Random(9)
    for _ in range(200):
        a, sa = rand_domain(rng)
        for v in range(-14, 15):
            want = max((x for x in sa if x <= v), default=None)
            assert a.floor_member(v) == want


def test_str_forms():
    assert str(IntDomain.of((1, 3), (8, 10))) == "int(1..3,8..10)"
    assert str(IntDomain.of((4, 4))) == "int(4)"
