import pytest
from hypothesis import given

from latcensus.canon import canonical_form
from latcensus.congruence import (
    Congruence,
    con_spectrum,
    count_congruences,
    count_congruences_naive,
    is_congruence,
    join_irreducible_congruences,
    principal_congruence,
    verify_congruence_spectrum,
    with_con_counts,
)
from latcensus.core import IndexOutOfRange, SizeLimit, build_expression, chain, dual, named
from latcensus.structure import CHAIN, GLUED_B4, GLUED_N5
from strategies import lattice_expressions


def test_principal_congruence_examples():
    theta = principal_congruence(chain(3), 0, 1)
    assert theta.blocks == ((0, 1), (2,))
    monolith = principal_congruence(named("N5"), 1, 3)  # collapse a and c
    assert monolith.blocks == ((0,), (1, 3), (2,), (4,))
    with pytest.raises(ValueError):
        principal_congruence(chain(3), 1, 1)
    with pytest.raises(IndexOutOfRange):
        principal_congruence(chain(3), 0, 5)


def test_principal_congruences_are_congruences(census):
    for n in range(2, 8):
        for rec in census(n):
            lat = rec.lattice()
            for a in range(n):
                for b in range(a + 1, n):
                    theta = principal_congruence(lat, a, b)
                    assert is_congruence(lat, theta.blocks)
                    assert theta.collapses(a, b)


def test_congruence_refinement():
    lat = named("N5")
    monolith = principal_congruence(lat, 1, 3)
    bigger = principal_congruence(lat, 0, 1)
    assert monolith.refines(bigger)  # the monolith sits below every other
    assert not bigger.refines(monolith)
    all_block = Congruence((tuple(range(5)),))
    assert monolith.refines(all_block)
    assert not all_block.refines(monolith)
    assert not monolith.is_trivial()
    assert Congruence(((0,), (1,), (2,), (3,), (4,))).is_trivial()


def test_is_congruence_rejects_non_partitions():
    lat = chain(3)
    assert not is_congruence(lat, [(0, 1)])  # misses 2
    assert not is_congruence(lat, [(0, 1), (1, 2)])  # overlap
    assert is_congruence(lat, [(0, 1), (2,)])
    assert not is_congruence(named("N5"), [(0, 1), (2,), (3,), (4,)])


@pytest.mark.parametrize(
    "expr,expected",
    [
        ("C5", 16),
        ("B4+C2", 8),
        ("C2+B4", 8),
        ("N5", 5),
        ("M3", 2),
        ("C1", 1),
        ("C2xC3", 8),
        ("(C2xC3)+C2", 16),
        ("B4", 4),
    ],
)
def test_count_congruences_examples(expr, expected):
    assert count_congruences(build_expression(expr)) == expected


@pytest.mark.parametrize("k", range(1, 13))
def test_chain_congruence_count(k):
    assert count_congruences(chain(k)) == 2 ** (k - 1)


def test_count_congruences_size_limit():
    with pytest.raises(SizeLimit):
        count_congruences(chain(21))
    with pytest.raises(SizeLimit):
        count_congruences_naive(chain(9))


@pytest.mark.parametrize("name", ["B4", "N5", "M3", "C2xC3", "B8", "C6"])
def test_downset_count_matches_naive_named(name):
    lat = named(name)
    assert count_congruences(lat) == count_congruences_naive(lat)


@pytest.mark.parametrize("n", range(1, 6))
def test_downset_count_matches_naive_census(census, n):
    for rec in census(n):
        lat = rec.lattice()
        assert count_congruences(lat) == count_congruences_naive(lat)


def test_join_irreducible_congruences_dedup():
    # collapsing either edge of B4 forces the opposite edge, so the four
    # covers give two congruences; in M3 every cover collapses everything
    assert len(join_irreducible_congruences(named("B4"))) == 2
    assert len(join_irreducible_congruences(named("M3"))) == 1
    assert join_irreducible_congruences(chain(1)) == []


@given(lattice_expressions(max_size=12))
def test_congruence_count_is_self_dual(expr):
    lat = build_expression(expr)
    assert count_congruences(lat) == count_congruences(dual(lat))


def test_con_spectrum_observed_values():
    assert con_spectrum(5).values == (16, 8, 5, 2)
    report = con_spectrum(6)
    assert report.values[:5] == (32, 16, 10, 8, 7)
    assert report.top_verdicts == {"top_values": True, "top_three_shapes": True}


def test_verify_congruence_spectrum_small(census):
    for n in (5, 6, 7):
        report = verify_congruence_spectrum(n)
        assert report.passed, report.failures
    with pytest.raises(ValueError):
        verify_congruence_spectrum(4)


def test_congruence_top_three_witness_shapes(census):
    records = with_con_counts(census(6))
    by_tag = {CHAIN: 32, GLUED_B4: 16, GLUED_N5: 10}
    for rec in records:
        if rec.classification in by_tag:
            assert rec.con_count == by_tag[rec.classification]
        else:
            assert rec.con_count not in by_tag.values()


def test_fourth_largest_congruence_count_at_seven(census):
    records = with_con_counts(census(7))
    values = sorted({rec.con_count for rec in records}, reverse=True)
    assert values[3] == 16
    witness = canonical_form(build_expression("(C2xC3)+C2")).hex()
    assert witness in {rec.canon for rec in records if rec.con_count == 16}


def test_with_con_counts_serialization(census):
    records = with_con_counts(census(4))
    line = records[0].to_json_line()
    assert '"con_count":' in line and line.index('"sub_count"') < line.index(
        '"con_count"'
    ) < line.index('"class"')
