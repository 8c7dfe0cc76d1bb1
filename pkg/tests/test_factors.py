import numpy as np
import pytest

from smoothwords import (
    Alphabet,
    BaseSequenceSpec,
    FactorIndex,
    NaiveFactorScan,
    Word,
    kolakoski_prefix,
)


def test_index_matches_naive_on_random_words():
    rng = np.random.default_rng(0)
    for _ in range(40):
        n = int(rng.integers(10, 300))
        arr = rng.integers(1, 4, size=n)
        l_max = int(rng.integers(1, min(10, n) + 1))
        idx = FactorIndex(arr, l_max)
        ref = NaiveFactorScan(arr, l_max)
        for length in range(1, l_max + 1):
            assert idx.distinct_count(length) == ref.distinct_count(length)
            assert idx.factor_set(length) == ref.factor_set(length)
            groups = idx.groups(length)
            for g in range(groups.group_count):
                factor = idx.factor_of_group(length, g)
                occ = ref.occurrences(factor)
                assert groups.count[g] == len(occ)
                assert groups.first[g] == occ[0]
                assert groups.last[g] == occ[-1]
                expected_second = occ[1] if len(occ) > 1 else -1
                assert groups.second[g] == expected_second
                assert groups.max_gap[g] == ref.max_gap(factor)


def test_index_matches_naive_on_smooth_prefix():
    w = kolakoski_prefix(BaseSequenceSpec(Alphabet((1, 2)), (1, 2)), 10**4)
    idx = FactorIndex(w, 12)
    ref = NaiveFactorScan(w, 12)
    for length in (1, 2, 5, 12):
        assert idx.factor_set(length) == ref.factor_set(length)
        groups = idx.groups(length)
        for g in range(groups.group_count):
            factor = idx.factor_of_group(length, g)
            assert groups.max_gap[g] == ref.max_gap(factor)


def test_factor_count_never_exceeds_window():
    w = kolakoski_prefix(BaseSequenceSpec(Alphabet((1, 2)), (1, 2)), 5000)
    idx = FactorIndex(w, 10)
    for length in range(1, 11):
        assert idx.distinct_count(length) <= len(w) - length + 1


def test_contains_and_window_queries():
    arr = np.array([1, 2, 2, 1, 1, 2, 1, 2, 2])
    idx = FactorIndex(arr, 4)
    assert idx.contains((2, 2, 1))
    assert not idx.contains((2, 2, 2))
    with pytest.raises(ValueError):
        idx.contains((1,) * 5)
    window = idx.groups_starting_in(2, 0, 3)
    factors = {idx.factor_of_group(2, int(g)) for g in window}
    assert factors == {(1, 2), (2, 2), (2, 1)}


def test_length_bounds():
    with pytest.raises(ValueError):
        FactorIndex(np.array([1, 2, 1]), 5)
    idx = FactorIndex(np.array([1, 2, 1]), 2)
    with pytest.raises(ValueError):
        idx.ids(3)
