"""Median construction: both routes, invariants, and the regularity gate."""

from functools import reduce
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latmed.errors import EmptyInput, NotRegular, ShapeMismatch
from latmed.lattice_median import (
    EXHAUSTIVE_BOUND,
    MedianFamily,
    check_median_theorem,
    check_regular,
    generalized_medians,
    median_invariant_failures,
    medians_via_meet_join,
)
from latmed.order_core import join, meet

WORKED_INPUTS = [(1, 0), (0, 1), (0, 2)]
WORKED_MEDIANS = [(0, 0), (0, 1), (1, 2)]


def test_worked_example_order_statistics():
    assert generalized_medians(WORKED_INPUTS) == WORKED_MEDIANS


def test_worked_example_meet_join_route():
    # independent route: comparator network over whole-element meet/join
    assert medians_via_meet_join(WORKED_INPUTS) == WORKED_MEDIANS


def test_worked_example_pairwise_ops():
    assert meet((1, 0), (0, 1)) == (0, 0)
    assert join((1, 0), (0, 2)) == (1, 2)


families = st.integers(1, 8).flatmap(
    lambda d: st.lists(
        st.tuples(*[st.integers(0, 10)] * d), min_size=1, max_size=8
    )
)


@given(families)
@settings(max_examples=300)
def test_routes_agree(family):
    assert generalized_medians(family) == medians_via_meet_join(family)


@given(families)
@settings(max_examples=200)
def test_median_invariants_hold(family):
    medians = generalized_medians(family)
    assert median_invariant_failures(family, medians) == []


@given(families)
def test_extreme_medians_are_meet_and_join(family):
    medians = generalized_medians(family)
    assert medians[0] == reduce(meet, family)
    assert medians[-1] == reduce(join, family)


def test_single_vector_family_is_fixed():
    assert generalized_medians([(3, 1, 4)]) == [(3, 1, 4)]


def test_pair_family_gives_meet_and_join():
    a, b = (2, 0, 1), (0, 3, 1)
    assert generalized_medians([a, b]) == [meet(a, b), join(a, b)]


def test_duplicates_are_kept():
    out = generalized_medians([(1, 1), (1, 1), (0, 2)])
    assert out == [(0, 1), (1, 1), (1, 2)]
    assert medians_via_meet_join([(1, 1), (1, 1), (0, 2)]) == out


def test_validation_errors():
    with pytest.raises(EmptyInput):
        generalized_medians([])
    with pytest.raises(ShapeMismatch):
        generalized_medians([(1, 2), (1, 2, 3)])
    with pytest.raises(EmptyInput):
        medians_via_meet_join([])


def test_median_family_record():
    fam = MedianFamily.compute(WORKED_INPUTS)
    assert fam.inputs == tuple(tuple(v) for v in WORKED_INPUTS)
    assert list(fam.medians) == WORKED_MEDIANS


def test_invariant_checker_can_fail():
    # sanity that the checker is not vacuous
    assert median_invariant_failures([(0, 0), (1, 1)], [(1, 1), (0, 0)])


def test_check_regular_accepts_closed_set():
    cube = list(product((0, 1), repeat=2))
    report = check_regular(cube)
    assert report.regular and report.counterexample is None


def test_check_regular_reports_first_violation():
    report = check_regular([(1, 0), (0, 1)])
    assert not report.regular
    assert report.counterexample == ((1, 0), (0, 1), "meet")
    # same pair, join side
    report = check_regular([(0, 0), (1, 0), (0, 1)])
    assert report.counterexample == ((1, 0), (0, 1), "join")


def test_check_regular_with_callback():
    # satisfying set is all vectors with first coordinate <= 1; closed
    elems = [(0, 0), (1, 2), (0, 2)]
    report = check_regular(elems, satisfies=lambda v: v[0] <= 1)
    assert report.regular
    # predicate that the listed elements satisfy but their meets leak out of
    report = check_regular([(2, 1), (1, 2)], satisfies=lambda v: sum(v) == 3)
    assert not report.regular


def test_theorem_check_exhaustive_counts():
    cube = list(product((0, 1), repeat=2))
    report = check_median_theorem(cube, k_max=3)
    # C(4,1) + C(4,2) + C(4,3) subsets
    assert report.subsets_checked == 4 + 6 + 4
    assert report.passed


def test_theorem_check_gate():
    with pytest.raises(NotRegular):
        check_median_theorem([(1, 0), (0, 1)])


def test_theorem_check_empty_set():
    report = check_median_theorem([])
    assert report.subsets_checked == 0 and report.passed


def test_theorem_check_sampled_path_is_deterministic():
    grid = list(product(range(4), range(4)))
    assert len(grid) > EXHAUSTIVE_BOUND
    a = check_median_theorem(grid, k_max=4, trials=50, rng_seed=7)
    b = check_median_theorem(grid, k_max=4, trials=50, rng_seed=7)
    assert a == b
    assert a.subsets_checked == 50
    assert a.passed  # a full grid is closed, so no violations
