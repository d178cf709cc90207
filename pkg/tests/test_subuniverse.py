import itertools
from collections import Counter

import pytest
from hypothesis import given

from latcensus.core import (
    EmptyGenerator,
    SizeLimit,
    build_expression,
    chain,
    dual,
    mask_of,
    named,
    sublattice,
)
from latcensus.subuniverse import (
    Subuniverse,
    count_subuniverses,
    count_subuniverses_naive,
    enumerate_subuniverses,
    generated_sublattice,
    is_subuniverse,
    trace_count,
)
from oracles import closure_bruteforce
from strategies import lattice_expressions

FIXTURE_COUNTS = [
    ("B4", 13),
    ("N5", 23),
    ("C2xC3", 38),
    ("B4+B4", 85),
    ("B4+C2+B4", 169),
    ("M3", 20),
    ("B8", 74),
]


@pytest.mark.parametrize("expr,expected", FIXTURE_COUNTS)
def test_fixture_counts(expr, expected):
    assert count_subuniverses(build_expression(expr)) == expected


@pytest.mark.parametrize("expr,expected", [(e, c) for e, c in FIXTURE_COUNTS if c < 100])
def test_fixture_counts_naive(expr, expected):
    assert count_subuniverses_naive(build_expression(expr)) == expected


@pytest.mark.parametrize("k", range(1, 13))
def test_chain_counts_are_powers_of_two(k):
    assert count_subuniverses(chain(k)) == 2**k


def test_is_subuniverse_examples():
    b4 = named("B4")
    assert not is_subuniverse(b4, {1, 2})
    assert not is_subuniverse(b4, {0, 1, 2})
    assert not is_subuniverse(b4, {1, 2, 3})
    assert is_subuniverse(b4, set())
    assert is_subuniverse(b4, {0, 1, 2, 3})
    assert is_subuniverse(b4, {1})


def test_b4_has_exactly_three_non_subuniverses():
    b4 = named("B4")
    bad = [m for m in range(16) if not is_subuniverse(b4, m)]
    assert bad == [mask_of({1, 2}), mask_of({0, 1, 2}), mask_of({1, 2, 3})]


def test_enumerate_chain2_order():
    subs = [s.members for s in enumerate_subuniverses(chain(2))]
    assert subs == [(), (0,), (1,), (0, 1)]


def test_enumerate_matches_count_and_is_deterministic():
    for expr in ("N5", "M3", "C2xC3", "B4+B4"):
        lat = build_expression(expr)
        first = [s.mask for s in enumerate_subuniverses(lat)]
        assert len(first) == count_subuniverses(lat)
        assert len(set(first)) == len(first)
        assert first == [s.mask for s in enumerate_subuniverses(lat)]
        sizes = [len(s) for s in enumerate_subuniverses(lat)]
        assert sizes == sorted(sizes)


def test_b8_size_breakdown():
    counts = Counter(len(s) for s in enumerate_subuniverses(named("B8")))
    assert [counts.get(k, 0) for k in range(9)] == [1, 8, 19, 18, 15, 6, 6, 0, 1]


def test_subuniverse_container_protocol():
    s = Subuniverse(mask_of({0, 2}))
    assert len(s) == 2 and 2 in s and 1 not in s and list(s) == [0, 2]


def test_generated_sublattice_examples():
    c5 = chain(5)
    for members in ({0}, {1, 3}, {0, 2, 4}):
        assert generated_sublattice(c5, members).members == tuple(sorted(members))
    assert generated_sublattice(named("B8"), {1, 2, 4}).members == tuple(range(8))
    assert generated_sublattice(named("M3"), {1, 2}).members == (0, 1, 2, 4)
    with pytest.raises(EmptyGenerator):
        generated_sublattice(named("B4"), set())


def test_generated_sublattice_is_a_closure():
    lat = build_expression("B4+B4")
    gen = generated_sublattice
    for seed in ({1}, {1, 4}, {2, 5}, {1, 2, 4, 5}):
        out = gen(lat, seed)
        assert set(seed) <= set(out.members)
        assert gen(lat, out).mask == out.mask  # idempotent
        assert is_subuniverse(lat, out)
        assert set(out.members) == closure_bruteforce(lat, set(seed))
    assert set(gen(lat, {1}).members) <= set(gen(lat, {1, 4}).members)  # monotone


def test_trace_count_examples():
    b4 = named("B4")
    total = count_subuniverses(b4)
    assert trace_count(b4, set()) == 1
    assert trace_count(b4, range(4)) == total
    t = trace_count(b4, {1, 2})
    assert t == 4 and total <= t * 2 ** (4 - 2)


def test_trace_bound_on_small_census(census):
    for n in (4, 5):
        for rec in census(n):
            lat = rec.lattice()
            total = count_subuniverses(lat)
            for size in range(min(n, 3) + 1):
                for h in itertools.combinations(range(n), size):
                    assert total <= trace_count(lat, h) * 2 ** (n - size)


def test_sublattice_bound_and_equality_unions(census):
    # count bound via any generated sublattice, and the union property
    # whenever the bound is tight
    for n in range(1, 8):
        for rec in census(n):
            lat = rec.lattice()
            total = count_subuniverses(lat)
            seen = set()
            for size in range(1, min(n, 3) + 1):
                for gens in itertools.combinations(range(n), size):
                    k_mask = generated_sublattice(lat, gens).mask
                    if k_mask in seen:
                        continue
                    seen.add(k_mask)
                    induced = sublattice(lat, k_mask)
                    k_count = count_subuniverses(induced)
                    k_size = induced.n
                    assert total <= k_count * 2 ** (n - k_size)
                    if total == k_count * 2 ** (n - k_size):
                        _check_all_unions_closed(lat, k_mask)


def _check_all_unions_closed(lat, k_mask):
    inside = [s.mask for s in enumerate_subuniverses(sublattice(lat, k_mask))]
    # re-embed the induced subuniverses into ambient indices
    elems = [e for e in range(lat.n) if k_mask >> e & 1]
    for inner in inside:
        ambient = 0
        for pos, e in enumerate(elems):
            if inner >> pos & 1:
                ambient |= 1 << e
        for extra in _power_set_masks(lat.full_mask & ~k_mask):
            assert is_subuniverse(lat, ambient | extra)


def _power_set_masks(mask):
    free = [1 << e for e in range(mask.bit_length()) if mask >> e & 1]
    for choice in range(1 << len(free)):
        sub = 0
        for k, bit in enumerate(free):
            if choice >> k & 1:
                sub |= bit
        yield sub


def test_size_limits():
    big = chain(21)
    with pytest.raises(SizeLimit):
        count_subuniverses_naive(big)
    with pytest.raises(SizeLimit):
        list(enumerate_subuniverses(big))
    with pytest.raises(SizeLimit):
        trace_count(big, {0})
    assert count_subuniverses(big) == 2**21  # the optimized counter still runs


@given(lattice_expressions(max_size=10))
def test_optimized_counter_matches_naive(expr):
    lat = build_expression(expr)
    assert count_subuniverses(lat) == count_subuniverses_naive(lat)


@given(lattice_expressions(max_size=12))
def test_count_is_self_dual(expr):
    lat = build_expression(expr)
    assert count_subuniverses(lat) == count_subuniverses(dual(lat))
