"""Active-set enumeration: residuals, realizability, pruning, maximal sets."""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hoffman import (
    InequalitySystem,
    Level,
    Vec,
    active_set,
    enumerate_active_sets,
    make_index_set,
    max_residual,
    maximal_sets,
    minmax_sign,
    realizability,
    residuals,
    Trichotomy,
)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)

PAIR = InequalitySystem.of([[1, 1], [-1, -1]], [0, 0])
TRIANGLE = InequalitySystem.of([[1, 1], [-2, 1], [1, -2]], [1, 2, 3])
IDENTITY2 = InequalitySystem.of([[1, 0], [0, 1]], [0, 0])


@st.composite
def small_systems(draw):
    n = draw(st.integers(min_value=1, max_value=2))
    m = draw(st.integers(min_value=1, max_value=3))
    rows = [draw(st.lists(rationals, min_size=n, max_size=n)) for _ in range(m)]
    offsets = draw(st.lists(rationals, min_size=m, max_size=m))
    return InequalitySystem.of(rows, offsets)


# -- residuals and pointwise active sets -------------------------------------------


def test_residuals_and_active_set_of_pair_at_origin():
    origin = Vec.zeros(2)
    assert residuals(PAIR, origin).entries == (0, 0)
    assert max_residual(PAIR, origin) == 0
    assert active_set(PAIR, origin) == (1, 2)


def test_active_set_of_triangle_at_origin():
    origin = Vec.zeros(2)
    assert max_residual(TRIANGLE, origin) == -1
    assert active_set(TRIANGLE, origin) == (1,)


def test_positive_residual_single_row():
    system = InequalitySystem.of([[1, 0]], [0])
    assert max_residual(system, Vec.of([5, 0])) == 5
    assert active_set(system, Vec.of([5, 0])) == (1,)


def test_residuals_dimension_mismatch():
    with pytest.raises(ValueError):
        residuals(PAIR, Vec.of([1]))


# -- index-set plumbing --------------------------------------------------------------


def test_make_index_set_sorts_and_dedupes():
    assert make_index_set([3, 1, 3, 2]) == (1, 2, 3)


def test_make_index_set_rejects_bad_input():
    with pytest.raises(ValueError):
        make_index_set([])
    with pytest.raises(ValueError):
        make_index_set([0, 1])
    with pytest.raises(ValueError):
        make_index_set([-2])


def test_check_indices_rejects_out_of_range():
    with pytest.raises(ValueError):
        PAIR.check_indices(make_index_set([3]))


def test_rows_for_selects_in_order():
    rows = TRIANGLE.rows_for(make_index_set([3, 1]))
    assert [r.entries for r in rows] == [(1, 1), (1, -2)]


# -- realizability ---------------------------------------------------------------------


def test_pair_zero_level_full_set_realizable():
    witness = realizability(PAIR, [1, 2], Level.ZERO)
    assert witness is not None
    assert max_residual(PAIR, witness) == 0
    assert active_set(PAIR, witness) == (1, 2)


def test_pair_positive_level_full_set_not_realizable():
    # The two rows are negatives of each other: their residuals sum to zero,
    # so they can never sit together at a positive level.
    assert realizability(PAIR, [1, 2], Level.POSITIVE) is None


def test_triangle_full_set_not_realizable_at_zero():
    assert realizability(TRIANGLE, [1, 2, 3], Level.ZERO) is None


def test_triangle_pair_realizable_at_zero():
    witness = realizability(TRIANGLE, [1, 2], Level.ZERO)
    assert witness is not None
    assert max_residual(TRIANGLE, witness) == 0
    assert active_set(TRIANGLE, witness) == (1, 2)


def test_identity_pair_realizable_at_positive():
    witness = realizability(IDENTITY2, [1, 2], Level.POSITIVE)
    assert witness is not None
    assert max_residual(IDENTITY2, witness) > 0
    assert active_set(IDENTITY2, witness) == (1, 2)


def test_zero_row_active_at_zero_level_only_with_zero_offset():
    flat = InequalitySystem.of([[0, 0], [1, 0]], [0, 5])
    witness = realizability(flat, [1], Level.ZERO)
    assert witness is not None
    assert max_residual(flat, witness) == 0
    assert active_set(flat, witness) == (1,)
    # A zero row has residual fixed at -b, so it never reaches a positive level.
    assert realizability(flat, [1], Level.POSITIVE) is None


# -- enumeration -----------------------------------------------------------------------


def test_triangle_families_are_all_pairs_and_singletons():
    expected = ((1,), (2,), (3,), (1, 2), (1, 3), (2, 3))
    for level in (Level.POSITIVE, Level.ZERO):
        family = enumerate_active_sets(TRIANGLE, level)
        assert family.sets == expected
        assert family.level is level


def test_pair_families():
    assert enumerate_active_sets(PAIR, Level.POSITIVE).sets == ((1,), (2,))
    assert enumerate_active_sets(PAIR, Level.ZERO).sets == ((1, 2),)


def test_family_membership_protocol():
    family = enumerate_active_sets(TRIANGLE, Level.ZERO)
    assert [2, 1] in family
    assert (1, 2, 3) not in family


def test_order_is_cardinality_then_lexicographic():
    family = enumerate_active_sets(TRIANGLE, Level.POSITIVE)
    key = [(len(s), s) for s in family.sets]
    assert key == sorted(key)


def test_witnesses_realize_their_sets():
    for level in (Level.POSITIVE, Level.ZERO):
        family = enumerate_active_sets(TRIANGLE, level)
        for indices in family.sets:
            witness = family.witnesses[indices]
            assert active_set(TRIANGLE, witness) == indices
            phi = max_residual(TRIANGLE, witness)
            assert (phi > 0) == (level is Level.POSITIVE)


def test_independent_rows_realize_every_subset():
    # With linearly independent rows the residuals can be prescribed freely,
    # so every nonempty subset appears at both levels.
    system = InequalitySystem.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, -2, 3])
    all_subsets = [
        make_index_set(c)
        for size in range(1, 4)
        for c in combinations(range(1, 4), size)
    ]
    for level in (Level.POSITIVE, Level.ZERO):
        family = enumerate_active_sets(system, level)
        assert sorted(family.sets, key=lambda s: (len(s), s)) == all_subsets


@given(small_systems())
@settings(max_examples=40, deadline=None)
def test_pruned_enumeration_matches_brute_force(system):
    for level in (Level.POSITIVE, Level.ZERO):
        pruned = enumerate_active_sets(system, level, prune=True)
        brute = enumerate_active_sets(system, level, prune=False)
        assert pruned.sets == brute.sets


@given(small_systems())
@settings(max_examples=30, deadline=None)
def test_every_enumerated_witness_is_sound(system):
    for level in (Level.POSITIVE, Level.ZERO):
        family = enumerate_active_sets(system, level)
        for indices in family.sets:
            witness = family.witnesses[indices]
            assert active_set(system, witness) == indices
            phi = max_residual(system, witness)
            assert (phi > 0) == (level is Level.POSITIVE)


def test_worker_threads_do_not_change_the_result():
    sequential = enumerate_active_sets(TRIANGLE, Level.ZERO)
    threaded = enumerate_active_sets(TRIANGLE, Level.ZERO, max_workers=4)
    assert threaded.sets == sequential.sets


def test_more_active_rows_never_improve_the_sign():
    # Along any chain J ⊂ J' of realizable sets the worst-direction value of
    # the selected rows can only move toward the negative side.
    order = {Trichotomy.NEGATIVE: -1, Trichotomy.ZERO: 0, Trichotomy.POSITIVE: 1}
    family = enumerate_active_sets(TRIANGLE, Level.POSITIVE)
    for small in family.sets:
        for large in family.sets:
            if set(small) < set(large):
                sign_small = minmax_sign(TRIANGLE.rows_for(small))
                sign_large = minmax_sign(TRIANGLE.rows_for(large))
                assert order[sign_large] <= order[sign_small]


# -- maximal sets -----------------------------------------------------------------------


def test_maximal_sets_of_triangle_family():
    family = enumerate_active_sets(TRIANGLE, Level.POSITIVE)
    assert maximal_sets(family) == [(1, 2), (1, 3), (2, 3)]


def test_maximal_sets_collapse_nested_chain():
    sets = [make_index_set(s) for s in [(1,), (2,), (1, 2)]]
    assert maximal_sets(sets) == [(1, 2)]


def test_maximal_sets_drop_duplicates():
    sets = [make_index_set(s) for s in [(1, 2), (1, 2), (3,)]]
    assert maximal_sets(sets) == [(1, 2), (3,)]


def test_maximal_sets_of_empty_family():
    assert maximal_sets([]) == []
