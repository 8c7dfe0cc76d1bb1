"""Exact factor indexing for long words.

The index assigns every position a dense id for the factor of length L
starting there, for any L up to a configured maximum.  Ids come from
rank doubling: ranks for power-of-two lengths are built once, and an id
for arbitrary L is the dense pairing of two overlapping power-of-two
ranks.  Two positions share an id iff the factors are equal, so all the
statistics derived from ids (occurrence counts, first/second/last
occurrence, maximal gaps between consecutive occurrences) are exact.

A deliberately naive quadratic scanner with the same interface is kept
as a test oracle.

Indexes are read-only after construction; scans over disjoint lengths
are independent, and reports built from them are merged by length then
lexicographic factor order, so results do not depend on scan order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .words import Word

__all__ = ["FactorGroups", "FactorIndex", "NaiveFactorScan"]


def _dense(values: np.ndarray) -> tuple[np.ndarray, int]:
    """Dense 0-based ids preserving equality, plus the id count."""
    uniq, inv = np.unique(values, return_inverse=True)
    return inv.astype(np.int64), int(uniq.size)


@dataclass(frozen=True)
class FactorGroups:
    """Per-distinct-factor occurrence statistics for one length.

    Group g collects the start positions (0-based) of the g-th distinct
    factor in id order.  ``max_gap`` is 0 for factors occurring once.
    """

    length: int
    ids: np.ndarray  # dense id per start position
    first: np.ndarray
    second: np.ndarray  # -1 where the factor occurs only once
    last: np.ndarray
    count: np.ndarray
    max_gap: np.ndarray

    @property
    def group_count(self) -> int:
        return self.first.size


class FactorIndex:
    """Exact factor ids and occurrence statistics for lengths 1..l_max."""

    def __init__(self, word: Word | np.ndarray, l_max: int):
        arr = word.to_array() if isinstance(word, Word) else np.asarray(word)
        if l_max < 1:
            raise ValueError("l_max must be positive")
        if arr.size < l_max:
            raise ValueError("word shorter than l_max")
        self.arr = arr.astype(np.int64, copy=False)
        self.l_max = l_max
        self._pow_ranks: list[np.ndarray] = []
        self._pow_counts: list[int] = []
        self._ids_cache: dict[int, tuple[np.ndarray, int]] = {}
        self._groups_cache: dict[int, FactorGroups] = {}
        self._sets_cache: dict[int, set[tuple[int, ...]]] = {}
        ranks, count = _dense(self.arr)
        self._pow_ranks.append(ranks)
        self._pow_counts.append(count)
        half = 1
        while 2 * half <= l_max:
            prev = self._pow_ranks[-1]
            width = 2 * half
            m = self.arr.size - width + 1
            combo = prev[:m] * self._pow_counts[-1] + prev[half : half + m]
            ranks, count = _dense(combo)
            self._pow_ranks.append(ranks)
            self._pow_counts.append(count)
            half = width

    def __len__(self) -> int:
        return self.arr.size

    def starts(self, length: int) -> int:
        """Number of start positions for factors of this length."""
        return self.arr.size - length + 1

    def ids(self, length: int) -> np.ndarray:
        """Dense factor id at every start position, for one length."""
        return self._ids_and_count(length)[0]

    def _ids_and_count(self, length: int) -> tuple[np.ndarray, int]:
        if not 1 <= length <= self.l_max:
            raise ValueError(f"length must be in 1..{self.l_max}")
        cached = self._ids_cache.get(length)
        if cached is not None:
            return cached
        level = length.bit_length() - 1  # largest power of two <= length
        half = 1 << level
        if half == length:
            ranks = self._pow_ranks[level]
            m = self.starts(length)
            result = ranks[:m], self._pow_counts[level]
        else:
            ranks = self._pow_ranks[level]
            m = self.starts(length)
            combo = (
                ranks[:m] * self._pow_counts[level]
                + ranks[length - half : length - half + m]
            )
            result = _dense(combo)
        self._ids_cache[length] = result
        return result

    def groups(self, length: int) -> FactorGroups:
        """Occurrence statistics per distinct factor of one length."""
        cached = self._groups_cache.get(length)
        if cached is not None:
            return cached
        ids, _count = self._ids_and_count(length)
        order = np.argsort(ids, kind="stable")
        s = ids[order]
        boundary = np.flatnonzero(np.diff(s)) + 1
        starts = np.concatenate((np.zeros(1, dtype=np.int64), boundary))
        ends = np.concatenate((boundary, np.array([s.size], dtype=np.int64)))
        counts = ends - starts
        first = order[starts]
        last = order[ends - 1]
        second = np.where(counts >= 2, order[np.minimum(starts + 1, s.size - 1)], -1)
        # gaps between consecutive occurrences; zeros at group boundaries
        diffs = np.diff(order)
        same = np.diff(s) == 0
        masked = np.where(same, diffs, 0)
        masked = np.concatenate((masked, np.zeros(1, dtype=np.int64)))
        max_gap = np.maximum.reduceat(masked, starts)
        groups = FactorGroups(
            length, ids, first, second, last, counts, max_gap
        )
        self._groups_cache[length] = groups
        return groups

    def factor_at(self, pos: int, length: int) -> tuple[int, ...]:
        return tuple(self.arr[pos : pos + length].tolist())

    def factor_of_group(self, length: int, g: int) -> tuple[int, ...]:
        return self.factor_at(int(self.groups(length).first[g]), length)

    def distinct_count(self, length: int) -> int:
        return self.groups(length).group_count

    def factor_set(self, length: int) -> set[tuple[int, ...]]:
        """All distinct factors of one length, as tuples."""
        cached = self._sets_cache.get(length)
        if cached is not None:
            return cached
        g = self.groups(length)
        out = {self.factor_at(int(p), length) for p in g.first}
        self._sets_cache[length] = out
        return out

    def contains(self, factor: tuple[int, ...]) -> bool:
        length = len(factor)
        if not 1 <= length <= self.l_max:
            raise ValueError(f"factor length must be in 1..{self.l_max}")
        return tuple(factor) in self.factor_set(length)

    def groups_starting_in(self, length: int, lo: int, hi: int) -> np.ndarray:
        """Group indices with at least one occurrence starting in [lo, hi).

        Dense ids double as group indices, so the distinct ids in the
        window are exactly the groups sought.
        """
        m = self.starts(length)
        lo = max(lo, 0)
        hi = min(hi, m)
        if lo >= hi:
            return np.empty(0, dtype=np.int64)
        return np.unique(self.ids(length)[lo:hi])


class NaiveFactorScan:
    """Quadratic reference scanner with the same answers as FactorIndex."""

    def __init__(self, word: Word | np.ndarray, l_max: int):
        arr = word.to_array() if isinstance(word, Word) else np.asarray(word)
        self.symbols = tuple(int(x) for x in arr.tolist())
        self.l_max = l_max
        self._occ: dict[int, dict[tuple[int, ...], list[int]]] = {}
        for length in range(1, l_max + 1):
            table: dict[tuple[int, ...], list[int]] = {}
            for i in range(len(self.symbols) - length + 1):
                table.setdefault(self.symbols[i : i + length], []).append(i)
            self._occ[length] = table

    def occurrences(self, factor: tuple[int, ...]) -> list[int]:
        return self._occ[len(factor)].get(tuple(factor), [])

    def distinct_count(self, length: int) -> int:
        return len(self._occ[length])

    def factor_set(self, length: int) -> set[tuple[int, ...]]:
        return set(self._occ[length])

    def contains(self, factor: tuple[int, ...]) -> bool:
        return tuple(factor) in self._occ[len(factor)]

    def max_gap(self, factor: tuple[int, ...]) -> int:
        occ = self.occurrences(factor)
        if len(occ) < 2:
            return 0
        return max(b - a for a, b in zip(occ, occ[1:]))
