import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ucw.core import (
    CapacityError,
    DomainError,
    Family,
    basis_sets,
    check_conjecture,
    close_under_union,
    elements_of,
    frequencies,
    is_separating,
    is_union_closed,
    mask_of,
    max_frequency,
    power_set_family,
    restrict,
    separating_quotient,
    universe_of,
)

from conftest import random_union_closed

# paper family of 23 sets: P(4) plus seven sets containing 5
B23_LISTED = [
    [], [1], [2], [3], [4],
    [1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4],
    [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4], [1, 2, 3, 4],
    [1, 2, 3, 4, 5], [1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5], [2, 3, 4, 5],
    [1, 2, 5], [3, 4, 5],
]


@pytest.fixture(scope="module")
def b23_listed() -> Family:
    return Family.from_lists(5, B23_LISTED)


def test_mask_roundtrip():
    assert mask_of([1, 3]) == 0b101
    assert elements_of(0b101) == (1, 3)
    assert mask_of([]) == 0
    assert elements_of(0) == ()


def test_family_canonical_order():
    fam = Family.from_sets(2, [0b11, 0b01, 0b00])
    assert fam.sets == (0b00, 0b01, 0b11)
    with pytest.raises(DomainError):
        Family(2, (0b11, 0b01))  # out of canonical order
    with pytest.raises(CapacityError):
        Family(2, (0b100,))  # element 3 over m=2
    with pytest.raises(CapacityError):
        Family(0, ())
    with pytest.raises(CapacityError):
        Family(65, ())


def test_close_under_union_forced_single():
    fam = close_under_union([mask_of([1, 2]), mask_of([3])], 3)
    assert fam.sets == (mask_of([3]), mask_of([1, 2]), mask_of([1, 2, 3]))


def test_close_under_union_already_closed():
    fam = close_under_union([mask_of([1])], 1)
    assert fam.sets == (1,)


def test_close_under_union_three_block_generators():
    # three 5-element generators sharing the top element: unions of the
    # non-empty sub-collections, 2^3 - 1 sets in all
    gens = [
        mask_of([1, 2, 3, 4, 13]),
        mask_of([5, 6, 7, 8, 13]),
        mask_of([9, 10, 11, 12, 13]),
    ]
    fam = close_under_union(gens, 13)
    assert len(fam) == 7
    assert all(g in fam for g in gens)
    # every member is a superset of some generator
    assert all(any(s | g == s for g in gens) for s in fam)


def test_close_under_union_capacity_errors():
    with pytest.raises(CapacityError):
        close_under_union([1], 0)
    with pytest.raises(CapacityError):
        close_under_union([1], 65)
    with pytest.raises(CapacityError):
        close_under_union([0b100], 2)


def test_is_union_closed_trivial():
    assert is_union_closed(Family.from_lists(2, [[1], [2], [1, 2]]))
    assert not is_union_closed(Family.from_lists(2, [[1], [2]]))


def test_is_union_closed_paper_family(b23_listed):
    assert is_union_closed(b23_listed)


def test_is_union_closed_bulk_path_agrees():
    fam = power_set_family(11)  # 2048 members, exercises the vectorized path
    assert is_union_closed(fam)
    broken = Family.from_sets(11, [s for s in fam.sets if s != 0b11])
    assert not is_union_closed(broken)


def test_universe_of():
    assert universe_of(Family.from_lists(2, [[1], [1, 2]])) == 0b11
    assert universe_of(Family(1, ())) == 0
    assert universe_of(Family.from_lists(5, B23_LISTED)) == 0b11111


def test_frequencies_empty_set_counts_toward_size():
    fam = Family.from_lists(2, [[], [1], [1, 2]])
    assert frequencies(fam) == (2, 1)
    assert len(fam) == 3


def test_frequencies_paper_anchor(b23_listed):
    assert max(frequencies(b23_listed)) == 13


def test_frequencies_mass_balance(rng):
    for _ in range(50):
        fam = random_union_closed(rng)
        counts = frequencies(fam)
        assert sum(counts) == sum(s.bit_count() for s in fam.sets)


def test_max_frequency_smallest_element_tie():
    fam = Family.from_lists(2, [[1], [1, 2]])
    assert max_frequency(fam) == (1, 2)
    p2 = power_set_family(2)
    assert max_frequency(p2) == (1, 2)  # elements 1 and 2 tie at 2


def test_max_frequency_requires_universe():
    with pytest.raises(DomainError):
        max_frequency(Family(1, (0,)))


def test_is_separating():
    assert not is_separating(Family.from_lists(2, [[1, 2]]))
    assert is_separating(Family.from_lists(2, [[1], [1, 2]]))
    assert is_separating(Family.from_lists(3, [[1, 3], [2, 3], [1, 2, 3]]))


def test_separating_quotient_merges_identical_columns():
    fam, mapping = separating_quotient(Family.from_lists(2, [[1, 2]]))
    assert fam == Family.from_lists(1, [[1]])
    assert mapping == {1: 1, 2: 1}


def test_separating_quotient_identity_on_separating():
    src = Family.from_lists(2, [[1], [1, 2]])
    fam, mapping = separating_quotient(src)
    assert fam == src
    assert mapping == {1: 1, 2: 2}


def test_separating_quotient_preserves_counts(rng):
    for _ in range(100):
        src = random_union_closed(rng)
        fam, _ = separating_quotient(src)
        assert is_separating(fam)
        assert len(fam) == len(src)
        if any(src.sets):
            assert max(frequencies(fam)) == max(frequencies(src))
        assert is_union_closed(fam)


def test_basis_sets_examples():
    fam = Family.from_lists(2, [[1], [2], [1, 2]])
    assert basis_sets(fam) == (mask_of([1]), mask_of([2]))
    p3 = power_set_family(3)
    assert basis_sets(p3) == (0, 1, 2, 4)  # empty set and the singletons
    pair = close_under_union([mask_of([1, 2]), mask_of([3, 4])], 4)
    assert basis_sets(pair) == (mask_of([1, 2]), mask_of([3, 4]))


def test_basis_sets_requires_closure():
    with pytest.raises(DomainError):
        basis_sets(Family.from_lists(2, [[1], [2]]))


def test_basis_reclosure_and_removal(rng):
    for _ in range(50):
        fam = random_union_closed(rng)
        basis = basis_sets(fam)
        assert close_under_union(basis, fam.m) == fam
        for b in basis:
            rest = Family.from_sets(fam.m, [s for s in fam.sets if s != b])
            assert is_union_closed(rest)


def test_restrict_partition():
    p2 = power_set_family(2)
    assert restrict(p2, 2, True) == Family.from_lists(2, [[2], [1, 2]])
    assert restrict(p2, 2, False) == Family.from_lists(2, [[], [1]])
    with pytest.raises(DomainError):
        restrict(p2, 3, True)


def test_restrict_keeps_closure(rng):
    for _ in range(50):
        fam = random_union_closed(rng)
        u = universe_of(fam)
        for a in elements_of(u):
            upper = restrict(fam, a, True)
            lower = restrict(fam, a, False)
            assert is_union_closed(upper)
            assert is_union_closed(lower)
            assert len(upper) + len(lower) == len(fam)


def test_restrict_b23_element5_free_is_power_set(b23_listed):
    lower = restrict(b23_listed, 5, False)
    assert len(lower) == 16
    assert set(lower.sets) == set(range(16))


def test_check_conjecture():
    verdict = check_conjecture(Family.from_lists(1, [[1]]))
    assert verdict.holds and verdict.witness == 1
    with pytest.raises(DomainError):
        check_conjecture(Family(1, (0,)))
    with pytest.raises(DomainError):
        check_conjecture(Family.from_lists(2, [[1], [2]]))


def test_check_conjecture_paper_anchor(b23_listed):
    verdict = check_conjecture(b23_listed)
    assert verdict.holds  # 2 * 13 >= 23


@settings(max_examples=60, deadline=None)
@given(
    m=st.integers(min_value=1, max_value=6),
    data=st.data(),
)
def test_closure_idempotent(m, data):
    gens = data.draw(
        st.lists(st.integers(min_value=0, max_value=(1 << m) - 1), min_size=1, max_size=5)
    )
    fam = close_under_union(gens, m)
    assert is_union_closed(fam)
    assert close_under_union(fam.sets, m) == fam


@settings(max_examples=60, deadline=None)
@given(
    m=st.integers(min_value=1, max_value=6),
    data=st.data(),
)
def test_quotient_separating_and_size_preserving(m, data):
    gens = data.draw(
        st.lists(st.integers(min_value=0, max_value=(1 << m) - 1), min_size=1, max_size=5)
    )
    fam = close_under_union(gens, m)
    quo, mapping = separating_quotient(fam)
    assert is_separating(quo)
    assert len(quo) == len(fam)
    assert set(mapping) == set(elements_of(universe_of(fam)))
