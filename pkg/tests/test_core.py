"""Core clock operation tests: examples, contracts, partial-order laws."""

import random

import pytest

from vclock.core import (
    ClockEntry,
    FixedClock,
    InvalidActorError,
    Ordering,
    PruneBounds,
    StepClock,
    SystemClock,
    VClock,
    all_nodes,
    canonical_text,
    compare,
    descends,
    equal,
    fresh,
    get_counter,
    get_timestamp,
    increment,
    merge,
    prune,
)

# --- independent mini-oracles over plain dicts -----------------------------
# These compute the expected results pointwise from {actor: count} maps,
# sharing no code with the implementation under test.


def counts(v: VClock) -> dict[str, int]:
    return {e.actor: e.count for e in v.entries}


def oracle_descends(a: dict[str, int], b: dict[str, int]) -> bool:
    return all(a.get(actor, 0) >= c for actor, c in b.items())


def oracle_compare(a: dict[str, int], b: dict[str, int]) -> Ordering:
    down = oracle_descends(a, b)
    up = oracle_descends(b, a)
    if down and up:
        return Ordering.EQUAL
    if down:
        return Ordering.DESCENDS
    if up:
        return Ordering.DOMINATED
    return Ordering.CONCURRENT


def vc(*triples: tuple[str, int, int]) -> VClock:
    return VClock(triples)


def random_clock(rng: random.Random, actors: str = "abcdefgh") -> VClock:
    entries = []
    for actor in actors:
        if rng.random() < 0.5:
            entries.append((actor, rng.randint(1, 5), rng.randint(0, 50)))
    return VClock(entries)


# --- fresh ------------------------------------------------------------------


def test_fresh_is_empty():
    assert len(fresh()) == 0
    assert all_nodes(fresh()) == []
    assert equal(fresh(), fresh())


# --- increment ---------------------------------------------------------------


def test_increment_new_actor():
    v = increment("a", fresh(), FixedClock(100))
    assert v.entries == (ClockEntry("a", 1, 100),)


def test_increment_existing_actor():
    v = increment("a", vc(("a", 1, 100)), FixedClock(105))
    assert v.entries == (ClockEntry("a", 2, 105),)


def test_increment_second_actor():
    v = increment("b", vc(("a", 2, 105)), FixedClock(106))
    assert v.entries == (ClockEntry("a", 2, 105), ClockEntry("b", 1, 106))


def test_increment_counts_events_per_actor():
    # count per actor must equal the number of increments that actor made
    rng = random.Random(7)
    expected: dict[str, int] = {}
    v = fresh()
    source = StepClock()
    for _ in range(200):
        actor = rng.choice("abcd")
        v = increment(actor, v, source)
        expected[actor] = expected.get(actor, 0) + 1
    assert counts(v) == expected


def test_increment_rejects_bad_actor():
    for bad in ("", "a b", "a:b", "a;b", "\t", "x\n"):
        with pytest.raises(InvalidActorError):
            increment(bad, fresh(), FixedClock(0))


# --- equal -------------------------------------------------------------------


def test_equal_ignores_timestamps():
    assert equal(vc(("a", 1, 100)), vc(("a", 1, 999)))


def test_equal_differs_on_counts():
    assert not equal(vc(("a", 1, 100)), vc(("a", 2, 100)))


def test_equal_differs_on_actors():
    assert not equal(vc(("a", 1, 1)), vc(("b", 1, 1)))


# --- descends ----------------------------------------------------------------


def test_descends_empty_is_bottom():
    for v in (fresh(), vc(("a", 1, 1)), vc(("a", 2, 1), ("b", 1, 2))):
        assert descends(v, fresh())
    assert not descends(fresh(), vc(("a", 1, 1)))


def test_descends_pointwise():
    assert descends(vc(("a", 2, 0), ("b", 1, 0)), vc(("a", 1, 0)))
    assert not descends(vc(("a", 1, 0)), vc(("b", 1, 0)))
    assert not descends(vc(("b", 1, 0)), vc(("a", 1, 0)))


def test_descends_is_reflexive():
    v = vc(("a", 2, 3), ("c", 4, 9))
    assert descends(v, v)


# --- compare -----------------------------------------------------------------


def test_compare_reflexive_equal():
    v = vc(("a", 1, 1), ("b", 2, 2))
    assert compare(v, v) is Ordering.EQUAL


def test_compare_strict_domination():
    assert compare(vc(("a", 2, 0)), vc(("a", 1, 0))) is Ordering.DESCENDS
    assert compare(vc(("a", 1, 0)), vc(("a", 2, 0))) is Ordering.DOMINATED


def test_compare_concurrent():
    assert compare(vc(("a", 1, 0)), vc(("b", 1, 0))) is Ordering.CONCURRENT


def test_exactly_one_ordering_on_small_clocks():
    # every clock over two actors with counts 0..2; 0 means absent
    clocks = []
    for ca in range(3):
        for cb in range(3):
            entries = []
            if ca:
                entries.append(("a", ca, 0))
            if cb:
                entries.append(("b", cb, 0))
            clocks.append(VClock(entries))
    for v1 in clocks:
        for v2 in clocks:
            result = compare(v1, v2)
            is_eq = equal(v1, v2)
            down = descends(v1, v2)
            up = descends(v2, v1)
            if result is Ordering.EQUAL:
                assert is_eq
            elif result is Ordering.DESCENDS:
                assert down and not is_eq
            elif result is Ordering.DOMINATED:
                assert up and not is_eq
            else:
                assert not down and not up


# --- merge -------------------------------------------------------------------


def test_merge_empty_is_identity():
    v = vc(("a", 2, 10), ("b", 1, 5))
    assert merge(v, fresh()) == v
    assert merge(fresh(), v) == v


def test_merge_per_actor_maxima():
    merged = merge(vc(("a", 2, 10), ("b", 1, 5)), vc(("a", 1, 12), ("c", 3, 7)))
    assert merged.entries == (
        ClockEntry("a", 2, 12),
        ClockEntry("b", 1, 5),
        ClockEntry("c", 3, 7),
    )


def test_merge_idempotent():
    v = vc(("a", 2, 10), ("b", 1, 5))
    assert merge(v, v) == v


def test_merge_union_of_actors():
    rng = random.Random(3)
    for _ in range(50):
        v1 = random_clock(rng)
        v2 = random_clock(rng)
        merged = merge(v1, v2)
        assert all_nodes(merged) == sorted(set(all_nodes(v1)) | set(all_nodes(v2)))


# --- get_counter / get_timestamp / all_nodes ----------------------------------


def test_get_counter():
    assert get_counter("a", fresh()) == 0
    assert get_counter("a", vc(("a", 3, 10))) == 3
    assert get_counter("b", vc(("a", 3, 10))) == 0


def test_get_timestamp():
    assert get_timestamp("a", vc(("a", 3, 10))) == 10
    assert get_timestamp("b", vc(("a", 3, 10))) is None
    assert get_timestamp("a", increment("a", fresh(), FixedClock(77))) == 77


def test_all_nodes_sorted():
    assert all_nodes(vc(("b", 1, 1), ("a", 2, 2))) == ["a", "b"]


# --- prune -------------------------------------------------------------------


def aged_clock(timestamps: list[int]) -> VClock:
    return VClock((f"n{i:02d}", 1, ts) for i, ts in enumerate(timestamps))


def test_prune_small_floor_leaves_clock_alone():
    v = vc(("a", 1, 10), ("b", 1, 20))
    bounds = PruneBounds(small=5, large=10, young=100, old=500)
    assert prune(v, 1000, bounds) is v


def test_prune_all_older_than_old_shrinks_to_small():
    v = aged_clock(list(range(1, 13)))  # 12 entries, all far older than now - old
    bounds = PruneBounds(small=2, large=10, young=0, old=500)
    result = prune(v, 1000, bounds)
    assert len(result) == 2
    assert {e.timestamp for e in result.entries} == {11, 12}


def test_prune_none_older_than_old_shrinks_to_large():
    v = aged_clock(list(range(600, 612)))  # 12 entries, all younger than now - old
    bounds = PruneBounds(small=2, large=10, young=0, old=500)
    result = prune(v, 1000, bounds)
    assert len(result) == 10
    assert {e.timestamp for e in result.entries} == set(range(602, 612))


def test_prune_everything_with_zero_bounds():
    v = aged_clock([5, 9, 40])
    bounds = PruneBounds(small=0, large=0, young=0, old=0)
    assert prune(v, 1000, bounds) == fresh()


def test_prune_protects_young_entries():
    v = aged_clock([1, 2, 990])
    bounds = PruneBounds(small=0, large=0, young=20, old=20)
    result = prune(v, 1000, bounds)
    assert [e.timestamp for e in result.entries] == [990]


def test_prune_survivors_bit_identical():
    v = aged_clock([3, 7, 800, 900])
    bounds = PruneBounds(small=1, large=2, young=50, old=300)
    result = prune(v, 1000, bounds)
    original = set(v.entries)
    assert all(e in original for e in result.entries)


def test_prune_tie_break_by_actor():
    v = VClock([("b", 1, 5), ("a", 1, 5), ("c", 1, 5)])
    bounds = PruneBounds(small=2, large=2, young=0, old=0)
    result = prune(v, 100, bounds)
    # same age: the lexically smallest actor goes first
    assert all_nodes(result) == ["b", "c"]


def test_prune_rejects_bad_bounds():
    with pytest.raises(ValueError):
        PruneBounds(small=3, large=2, young=0, old=0)
    with pytest.raises(ValueError):
        PruneBounds(small=0, large=0, young=5, old=4)
    with pytest.raises(ValueError):
        PruneBounds(small=-1, large=2, young=0, old=0)


def test_prune_empty_clock_is_noop():
    bounds = PruneBounds(small=0, large=0, young=0, old=0)
    assert prune(fresh(), 10, bounds) == fresh()


# --- value semantics and canonical form ---------------------------------------


def test_construction_order_does_not_matter():
    a = VClock([("b", 1, 2), ("a", 2, 1)])
    b = VClock([("a", 2, 1), ("b", 1, 2)])
    assert a == b
    assert canonical_text(a) == canonical_text(b) == "a:2:1;b:1:2"


def test_canonical_text_stable_across_operations():
    rng = random.Random(11)
    for _ in range(50):
        v1 = random_clock(rng)
        v2 = random_clock(rng)
        assert canonical_text(merge(v1, v2)) == canonical_text(merge(v2, v1))


def test_vclock_rejects_duplicates_and_bad_fields():
    with pytest.raises(ValueError):
        VClock([("a", 1, 1), ("a", 2, 2)])
    with pytest.raises(ValueError):
        VClock([("a", 0, 1)])
    with pytest.raises(ValueError):
        VClock([("a", 1, -1)])
    with pytest.raises(InvalidActorError):
        VClock([("a;b", 1, 1)])


def test_vclock_is_immutable_and_hashable():
    v = vc(("a", 1, 1))
    with pytest.raises(AttributeError):
        v.entries = ()
    assert hash(v) == hash(vc(("a", 1, 1)))
    assert str(v) == "a:1:1"
    assert "a:1:1" in repr(v)


def test_empty_clock_renders_as_dash():
    assert canonical_text(fresh()) == "-"


# --- clock sources -------------------------------------------------------------


def test_system_clock_never_decreases():
    clock = SystemClock()
    values = [clock.now() for _ in range(5)]
    assert values == sorted(values)
    assert all(v >= 0 for v in values)


def test_step_clock_advances():
    clock = StepClock(start=3, step=2)
    assert [clock.now() for _ in range(3)] == [3, 5, 7]


def test_fixed_clock_validation():
    assert FixedClock(9).now() == 9
    with pytest.raises(ValueError):
        FixedClock(-1)


def test_merge_does_not_consult_clock_source():
    class Exploding:
        def now(self):  # pragma: no cover - must never run
            raise AssertionError("merge consulted the clock source")

    v1 = vc(("a", 1, 1))
    v2 = vc(("b", 1, 2))
    merged = merge(v1, v2, Exploding())
    assert all_nodes(merged) == ["a", "b"]


# --- partial-order laws (randomized; the full-size suite is in acceptance) -----


def test_partial_order_laws_small():
    rng = random.Random(99)
    for _ in range(500):
        a = random_clock(rng)
        b = random_clock(rng)
        c = random_clock(rng)

        assert descends(a, a)
        assert descends(a, b) == oracle_descends(counts(a), counts(b))
        assert compare(a, b) is oracle_compare(counts(a), counts(b))

        if descends(a, b) and descends(b, a):
            assert equal(a, b)

        m = merge(a, b)
        assert descends(m, a) and descends(m, b)
        assert merge(a, b) == merge(b, a)
        assert merge(a, merge(b, c)) == merge(merge(a, b), c)
        assert merge(a, a) == a

        u = merge(a, merge(b, c))
        assert descends(u, m)

        actor = rng.choice("abcdefgh")
        assert compare(increment(actor, a, FixedClock(60)), a) is Ordering.DESCENDS
