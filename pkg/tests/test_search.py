"""Containment digraphs, degree budgets, the structured shape search,
and the exhaustive small-ground sweeps.

The n = 8 two-pair search result is validated two independent ways: the
known 11-set family must appear verbatim, and the full labeled list
must be exactly the disjoint union of the relabeling orbits of the
canonical representatives under the 192 ground-set permutations that
preserve the missing-pair structure.
"""

import itertools

import pytest

from unionclosed import (
    CANONICAL_CAP,
    Certificate,
    CounterexampleReport,
    Digraph,
    ENUMERATION_CAP,
    Family,
    FamilyFormatError,
    ResourceLimitError,
    SEARCH_CAP,
    SearchShape,
    conjecture_sweep,
    contains_tournament,
    degree_budget_feasible,
    digraph_from_family,
    enumerate_conjecture,
    frequency_vector,
    full_mask,
    max_outdegree,
    min_even_ground_size,
    minimal_counterexample,
    search_counterexamples,
    verify_certificate,
)
from helpers import as_sets, brute_certificate_exists

TWO_PAIRS = SearchShape(8, ((1, 2), (3, 4)))


# ---------------------------------------------------------------- digraph


def test_digraph_validates_rows():
    with pytest.raises(ValueError):
        Digraph(2, (0b01,))  # wrong row count
    with pytest.raises(ValueError):
        Digraph(2, (0b01, 0b01))  # self loop at vertex 1
    with pytest.raises(ValueError):
        Digraph(2, (0b100, 0))  # row outside the vertex range


def test_digraph_accessors():
    d = Digraph(3, (0b010, 0b100, 0b000))
    assert d.edge(1, 2) and d.edge(2, 3)
    assert not d.edge(2, 1) and not d.edge(3, 1)
    assert [d.out_degree(i) for i in (1, 2, 3)] == [1, 1, 0]
    assert max_outdegree(d) == 1
    assert max_outdegree(Digraph(0, ())) == 0


def test_digraph_from_family_records_containment():
    # A_j may not contain j; edge (i, j) says i lies in A_j
    shape = SearchShape(4, ())
    d = digraph_from_family(shape, (0b0110, 0b0100, 0b0000, 0b0111))
    assert d.rows == (0b1000, 0b1001, 0b1011, 0b0000)
    with pytest.raises(ValueError):
        digraph_from_family(shape, (0b0001, 0, 0, 0))
    with pytest.raises(ValueError):
        digraph_from_family(shape, (0, 0, 0))


def test_contains_tournament():
    assert contains_tournament(Digraph(3, (0b110, 0b100, 0b000)))
    assert not contains_tournament(Digraph(3, (0b110, 0b000, 0b000)))  # 2-3 missing
    assert contains_tournament(Digraph(1, (0,)))


# ---------------------------------------------------------------- budgets


def test_degree_budget_feasibility_threshold():
    assert [degree_budget_feasible(n) for n in (2, 4, 6, 8, 10)] == [
        False,
        False,
        False,
        True,
        True,
    ]


def test_degree_budget_rejects_underived_cases():
    for bad in (0, 1, 7, -2, True):
        with pytest.raises(ValueError):
            degree_budget_feasible(bad)
    with pytest.raises(ValueError):
        degree_budget_feasible(8, num_pairs=1)


def test_min_even_ground_size():
    assert min_even_ground_size() == 8


# ------------------------------------------------------------------ shape


def test_shape_normalizes_pairs():
    shape = SearchShape(8, ((4, 3), (2, 1)))
    assert shape.missing_pairs == ((1, 2), (3, 4))
    assert shape.family_size() == 11


@pytest.mark.parametrize(
    "pairs",
    [((1, 1),), ((0, 2),), ((1, 9),), ((1, 2), (2, 1)), ((1,),), ((1, "2"),)],
)
def test_shape_rejects_bad_pairs(pairs):
    with pytest.raises(FamilyFormatError):
        SearchShape(8, pairs)


def test_shape_dict_round_trip():
    assert SearchShape.from_dict(TWO_PAIRS.to_dict()) == TWO_PAIRS
    with pytest.raises(FamilyFormatError):
        SearchShape.from_dict({"ground": 8})


def test_shape_filter_family_is_the_expected_filter():
    full = full_mask(8)
    expected = sorted(
        [full]
        + [full ^ (1 << i) for i in range(8)]
        + [full ^ 0b11, full ^ 0b1100]
    )
    assert list(TWO_PAIRS.filter_family().members) == expected


# ----------------------------------------------------------------- report


def test_report_construction_reverifies():
    report = minimal_counterexample()
    rebuilt = CounterexampleReport.from_parts(report.family, report.certificate)
    assert rebuilt == report
    assert CounterexampleReport.from_dict(report.to_dict()) == report


def test_report_rejects_tampering():
    report = minimal_counterexample()
    with pytest.raises(ValueError):
        CounterexampleReport(report.family, report.certificate, (9,) * 8, 9)
    with pytest.raises(ValueError):
        CounterexampleReport(report.family, report.certificate, report.frequency, 9)
    power = Family(2, (0, 1, 2, 3))
    cert = Certificate(2, ((0, 0), (1, 1), (2, 2), (3, 3)))
    with pytest.raises(ValueError):
        # certified but element 1 reaches half, so not a counterexample
        CounterexampleReport.from_parts(power, cert)


def test_minimal_counterexample_matches_the_known_listing():
    # the eleven sets, retyped here as a transcription cross-check
    listing = [
        {1, 2, 3, 4, 5, 6, 7, 8},
        {2, 4, 6, 7, 8},
        {1, 3, 5, 8},
        {1, 4, 7, 8},
        {2, 3, 5, 6},
        {1, 3, 7},
        {2, 3, 5},
        {2, 4, 6},
        {4, 5, 6, 7},
        {8},
        {1},
    ]
    report = minimal_counterexample()
    assert len(listing) == len(report.family) == 11
    assert set(map(frozenset, listing)) == set(as_sets(report.family))
    assert report.frequency == (5,) * 8
    assert report.max_frequency == 5
    assert verify_certificate(report.family, report.certificate)
    # each member pairs with the image that omits the listed elements
    full = full_mask(8)
    image_of = dict(report.certificate.pairs)
    assert image_of[full] == full
    for miss, member in [(1, {2, 4, 6, 7, 8}), (5, {1, 3, 7}), (8, {4, 5, 6, 7})]:
        mask = sum(1 << (e - 1) for e in member)
        assert image_of[mask] == full ^ (1 << (miss - 1))
    assert image_of[1 << 7] == full ^ 0b11
    assert image_of[1] == full ^ 0b1100


# ----------------------------------------------------------------- search


def stabilizer_perms():
    """All 192 permutations of [8] preserving {{1,2},{3,4}} as a pair set."""
    out = []
    for first, second in (((1, 2), (3, 4)), ((3, 4), (1, 2))):
        for a in itertools.permutations(first):
            for b in itertools.permutations(second):
                for rest in itertools.permutations((5, 6, 7, 8)):
                    out.append(a + b + rest)
    return out


def relabel(members, n, perm):
    out = []
    for m in members:
        x = 0
        for i in range(n):
            if m >> i & 1:
                x |= 1 << (perm[i] - 1)
        out.append(x)
    return tuple(sorted(out))


def test_two_pair_search_finds_every_labeled_family():
    reports = search_counterexamples(TWO_PAIRS)
    assert len(reports) == 1344
    families = {r.family.members for r in reports}
    assert len(families) == 1344
    assert minimal_counterexample().family.members in families
    for r in reports:
        assert r.family.ground_size == 8 and len(r.family) == 11
        assert r.frequency == (5,) * 8

    # orbit consistency: the canonical representatives, pushed through
    # every structure-preserving relabeling, must tile the labeled list
    reps = search_counterexamples(TWO_PAIRS, canonical=True)
    assert len(reps) == 7
    perms = stabilizer_perms()
    assert len(perms) == 192
    seen: set = set()
    for rep in reps:
        orbit = {relabel(rep.family.members, 8, p) for p in perms}
        assert len(orbit) == 192
        assert not (orbit & seen)
        seen |= orbit
    assert seen == families


def test_search_limit_truncates_the_sorted_list():
    full = search_counterexamples(TWO_PAIRS)
    assert search_counterexamples(TWO_PAIRS, limit=3) == full[:3]
    assert search_counterexamples(TWO_PAIRS, limit=0) == []


def test_search_worker_count_does_not_change_results():
    assert search_counterexamples(TWO_PAIRS, workers=3) == search_counterexamples(
        TWO_PAIRS
    )


def test_infeasible_shapes_come_back_empty():
    assert search_counterexamples(SearchShape(6, ((1, 2), (3, 4)))) == []
    assert search_counterexamples(SearchShape(8, ((1, 2),))) == []


def test_search_guards():
    with pytest.raises(ResourceLimitError):
        search_counterexamples(SearchShape(SEARCH_CAP + 2, ((1, 2), (3, 4))))
    with pytest.raises(ValueError):
        search_counterexamples(TWO_PAIRS, workers=0)
    with pytest.raises(ValueError):
        search_counterexamples(TWO_PAIRS, limit=-1)
    assert CANONICAL_CAP <= SEARCH_CAP


# ------------------------------------------------------------------ sweep


def test_sweep_ground_one():
    summary = conjecture_sweep(1)
    assert summary == (1, 2, 2, ())


def test_sweep_ground_two_matches_brute_force():
    summary = conjecture_sweep(2)
    assert summary.scanned == 14
    assert summary.violations == ()
    expected = 0
    for code in range(2, 16):
        fam = Family(2, tuple(i for i in range(4) if code >> i & 1))
        expected += brute_certificate_exists(as_sets(fam), 2)
    assert summary.certified == expected == 13


def test_sweep_ground_three_matches_brute_force():
    summary = conjecture_sweep(3)
    assert summary.scanned == 254
    assert summary.violations == ()
    expected = 0
    for code in range(2, 256):
        fam = Family(3, tuple(i for i in range(8) if code >> i & 1))
        expected += brute_certificate_exists(as_sets(fam), 3)
    assert summary.certified == expected == 192


def test_sweep_workers_agree():
    assert conjecture_sweep(3, workers=3) == conjecture_sweep(3)


def test_sweep_guards():
    for bad in (0, ENUMERATION_CAP + 1, True):
        with pytest.raises(ValueError):
            conjecture_sweep(bad)
    with pytest.raises(ValueError):
        conjecture_sweep(2, workers=0)


def test_enumerate_conjecture_is_empty_at_small_grounds():
    assert enumerate_conjecture(2) == []
    assert enumerate_conjecture(3) == []
