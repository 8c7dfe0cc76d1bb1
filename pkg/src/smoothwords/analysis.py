"""Empirical verification suite: frequencies, recurrence, gaps, closure.

These routines measure finite prefixes only.  They can confirm a
theorem's desk-scale consequences or exhibit concrete witnesses, but
they never certify a property of an infinite word; report docstrings
say exactly what was scanned.

Closure checks follow a middle-third protocol: candidate factors are
drawn from the middle third of the prefix while images are searched in
the whole prefix, so a factor whose image merely falls off the edge of
the window is not reported as a miss.

Report rows use 1-based positions and are ordered by length, then
lexicographically by factor, so output is deterministic.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TextIO

import numpy as np

from .expansion import CyclicOrder, phi_inverse_prefix, pseudo_inverse_with_base
from .factors import FactorIndex
from .words import (
    Alphabet,
    Permutation,
    Word,
    _run_arrays,
    format_symbols,
    is_palindrome,
)

__all__ = [
    "FrequencyReport",
    "RecurrenceReport",
    "GapReport",
    "GapStability",
    "ClosureWitness",
    "EqualRunBlock",
    "letter_frequencies",
    "is_well_proportioned_prefix",
    "exact_frequency_check",
    "recurrence_report",
    "max_gap_report",
    "gap_stability_check",
    "closure_check",
    "equal_run_blocks",
    "phi_inverse_palindrome_check",
]


# ---------------------------------------------------------------------------
# letter frequencies


@dataclass(frozen=True)
class FrequencyRow:
    k: int
    letter: int
    count: int
    ratio: float
    deviation: float


@dataclass
class FrequencyReport:
    """Per-letter counts and ratios at sampled prefix lengths.

    ``deviation`` is the distance of each ratio from the equidistributed
    value 1/n.
    """

    alphabet: Alphabet
    samples: tuple[int, ...]
    rows: list[FrequencyRow]

    def ratios_at(self, k: int) -> dict[int, float]:
        return {r.letter: r.ratio for r in self.rows if r.k == k}

    def max_deviation(self, k: int | None = None) -> float:
        rows = self.rows if k is None else [r for r in self.rows if r.k == k]
        return max(r.deviation for r in rows)

    def to_csv(self, out: TextIO) -> None:
        writer = csv.writer(out)
        writer.writerow(["k", "letter", "count", "ratio", "deviation"])
        for r in self.rows:
            writer.writerow(
                [r.k, r.letter, r.count, f"{r.ratio:.9f}", f"{r.deviation:.9f}"]
            )


def letter_frequencies(
    stream: Word | Iterable[int],
    samples: Sequence[int],
    alphabet: Alphabet,
) -> FrequencyReport:
    """Exact letter counts of a stream's prefixes at the sampled lengths."""
    if not samples or min(samples) < 1:
        raise ValueError("samples must be positive")
    need = max(samples)
    if isinstance(stream, Word):
        arr = stream.to_array()
        if arr.size < need:
            raise ValueError("stream exhausted before the largest sample")
    else:
        arr = np.fromiter(stream, dtype=np.int64, count=need)
        if arr.size < need:
            raise ValueError("stream exhausted before the largest sample")
    n = alphabet.size
    rows = []
    for k in sorted(set(int(s) for s in samples)):
        counts = np.bincount(arr[:k], minlength=alphabet.largest + 1)
        total = 0
        for letter in alphabet:
            c = int(counts[letter])
            total += c
            ratio = c / k
            rows.append(
                FrequencyRow(k, letter, c, ratio, abs(ratio - 1.0 / n))
            )
        if total != k:
            raise ValueError("stream contains letters outside the alphabet")
    return FrequencyReport(alphabet, tuple(sorted(set(samples))), rows)


def is_well_proportioned_prefix(bases: Word) -> bool:
    """Whether every complete n-block of the base word permutes the alphabet.

    Only complete blocks are checked; a trailing partial block is
    ignored, matching the prefix reading of the property.
    """
    if bases.alphabet is None:
        raise ValueError("base word needs an alphabet")
    letters = set(bases.alphabet.letters)
    n = bases.alphabet.size
    syms = bases.symbols
    for i in range(0, len(syms) - n + 1, n):
        if set(syms[i : i + n]) != letters:
            return False
    return True


def exact_frequency_check(u: Word, v: Word) -> bool:
    """Whether the expansion of exponents ``u`` over bases ``v`` is
    exactly equidistributed (every letter count equal to length/n).

    Structural requirements are enforced: all alphabet letters divisible
    by n, equal lengths divisible by n, and the n-blocks of ``v`` each a
    permutation of the alphabet.  The run-length structure of ``u`` is
    *not* constrained here: equidistribution is guaranteed when the run
    lengths of ``u`` are all divisible by n, and callers probing that
    boundary get the honest count comparison either way.
    """
    if v.alphabet is None:
        raise ValueError("base word needs an alphabet")
    alphabet = v.alphabet
    n = alphabet.size
    if any(a % n for a in alphabet):
        raise ValueError("every alphabet letter must be divisible by n")
    if len(u) != len(v):
        raise ValueError("exponent and base words must have equal length")
    if len(u) % n:
        raise ValueError("word length must be divisible by n")
    if not is_well_proportioned_prefix(v):
        raise ValueError("base word blocks must permute the alphabet")
    if len(u) == 0:
        return True
    expansion = pseudo_inverse_with_base(u, v).to_array()
    counts = np.bincount(expansion, minlength=alphabet.largest + 1)
    share, rem = divmod(expansion.size, n)
    if rem:
        return False
    return all(int(counts[a]) == share for a in alphabet)


# ---------------------------------------------------------------------------
# recurrence and gaps


@dataclass(frozen=True)
class RecurrenceRow:
    length: int
    factor: tuple[int, ...]
    first: int  # 1-based
    second: int | None  # 1-based, None if no second occurrence found


@dataclass
class RecurrenceReport:
    """Recurrence of every factor seen early in the prefix.

    A row per distinct factor (length <= l_max) that occurs fully inside
    the first ``scan_len`` letters, with the position of its second
    occurrence anywhere in the whole prefix, if one exists.
    """

    word_length: int
    l_max: int
    scan_len: int
    rows: list[RecurrenceRow]

    @property
    def non_recurrent(self) -> list[RecurrenceRow]:
        return [r for r in self.rows if r.second is None]

    @property
    def all_recurrent(self) -> bool:
        return not self.non_recurrent

    def to_csv(self, out: TextIO) -> None:
        writer = csv.writer(out)
        writer.writerow(["L", "factor", "first", "second", "recurrent"])
        for r in self.rows:
            writer.writerow(
                [
                    r.length,
                    format_symbols(r.factor),
                    r.first,
                    r.second if r.second is not None else "",
                    int(r.second is not None),
                ]
            )


def recurrence_report(
    w: Word,
    l_max: int,
    *,
    scan_len: int | None = None,
    index: FactorIndex | None = None,
) -> RecurrenceReport:
    """Check that early factors reappear somewhere in the prefix.

    ``scan_len`` defaults to 1% of the word.
    """
    n = len(w)
    if n < 2 * l_max:
        raise ValueError("word too short for the requested l_max")
    if scan_len is None:
        scan_len = max(l_max, n // 100)
    idx = index if index is not None else FactorIndex(w, l_max)
    rows: list[RecurrenceRow] = []
    for length in range(1, l_max + 1):
        groups = idx.groups(length)
        chosen = idx.groups_starting_in(length, 0, scan_len - length + 1)
        length_rows = []
        for g in chosen:
            first = int(groups.first[g])
            second = int(groups.second[g])
            length_rows.append(
                RecurrenceRow(
                    length,
                    idx.factor_at(first, length),
                    first + 1,
                    second + 1 if second >= 0 else None,
                )
            )
        length_rows.sort(key=lambda r: r.factor)
        rows.extend(length_rows)
    return RecurrenceReport(n, l_max, scan_len, rows)


@dataclass(frozen=True)
class GapRow:
    length: int
    factor: tuple[int, ...]
    occurrences: int
    max_gap: int  # 0 when the factor occurs once


@dataclass
class GapReport:
    """Maximal gap between consecutive occurrences, per distinct factor."""

    word_length: int
    l_max: int
    rows: list[GapRow]

    def gap_of(self, factor: tuple[int, ...]) -> int | None:
        for r in self.rows:
            if r.factor == factor:
                return r.max_gap
        return None

    def to_csv(self, out: TextIO) -> None:
        writer = csv.writer(out)
        writer.writerow(["L", "factor", "occurrences", "max_gap"])
        for r in self.rows:
            writer.writerow(
                [r.length, format_symbols(r.factor), r.occurrences, r.max_gap]
            )


def max_gap_report(
    w: Word,
    l_max: int,
    *,
    index: FactorIndex | None = None,
) -> GapReport:
    """Occurrence counts and maximal gaps for every factor up to l_max."""
    n = len(w)
    if n < 2 * l_max:
        raise ValueError("word too short for the requested l_max")
    idx = index if index is not None else FactorIndex(w, l_max)
    rows: list[GapRow] = []
    for length in range(1, l_max + 1):
        groups = idx.groups(length)
        length_rows = [
            GapRow(
                length,
                idx.factor_of_group(length, g),
                int(groups.count[g]),
                int(groups.max_gap[g]),
            )
            for g in range(groups.group_count)
        ]
        length_rows.sort(key=lambda r: r.factor)
        rows.extend(length_rows)
    return GapReport(n, l_max, rows)


@dataclass
class GapStability:
    """Comparison of per-factor max gaps at half and full prefix length.

    ``mismatches`` lists (length, factor, gap_half, gap_full) for factors
    of the half prefix whose maximal gap changed in the second half.
    Stable gaps at growing scales are the measurable face of uniform
    recurrence; instability is reported, never asserted away.
    """

    half_length: int
    full_length: int
    l_max: int
    compared: int
    mismatches: list[tuple[int, tuple[int, ...], int, int]]

    @property
    def all_stable(self) -> bool:
        return not self.mismatches


def gap_stability_check(w: Word, l_max: int) -> GapStability:
    """Compare max gaps per factor measured at |w|/2 and |w|."""
    n = len(w)
    half = n // 2
    half_word = Word.from_array(
        w.to_array()[:half], w.alphabet, is_prefix=True, validate=False
    )
    idx_half = FactorIndex(half_word, l_max)
    idx_full = FactorIndex(w, l_max)
    mismatches = []
    compared = 0
    for length in range(1, l_max + 1):
        gh = idx_half.groups(length)
        gf = idx_full.groups(length)
        full_gap = {
            idx_full.factor_of_group(length, g): int(gf.max_gap[g])
            for g in range(gf.group_count)
        }
        for g in range(gh.group_count):
            factor = idx_half.factor_of_group(length, g)
            compared += 1
            a, b = int(gh.max_gap[g]), full_gap[factor]
            if a != b:
                mismatches.append((length, factor, a, b))
    mismatches.sort(key=lambda m: (m[0], m[1]))
    return GapStability(half, n, l_max, compared, mismatches)


# ---------------------------------------------------------------------------
# closure under reversal / permutation


@dataclass(frozen=True)
class ClosureWitness:
    """A factor whose image under the operation was (or was not) found."""

    op: str
    factor: tuple[int, ...]
    image: tuple[int, ...]
    found: bool
    factor_position: int  # 1-based, inside the middle third
    image_position: int | None  # 1-based first occurrence when found


def _closure_op(
    op: str | Permutation,
) -> tuple[str, Callable[[tuple[int, ...]], tuple[int, ...]]]:
    if op == "reversal":
        return "reversal", lambda f: f[::-1]
    if isinstance(op, Permutation):
        return op.label(), lambda f: tuple(op(x) for x in f)
    raise ValueError("op must be 'reversal' or a Permutation")


def closure_check(
    w: Word,
    op: str | Permutation,
    l_max: int,
    *,
    index: FactorIndex | None = None,
) -> list[ClosureWitness]:
    """Misses of the middle-third closure protocol.

    Every distinct factor of length <= l_max starting in the middle
    third of the prefix is mapped through ``op`` and its image searched
    in the whole prefix; factors whose image never occurs come back as
    witnesses.  An empty list means the prefix looks closed under the
    operation at this scale.
    """
    n = len(w)
    if n < 3 * l_max:
        raise ValueError("word too short for the middle-third protocol")
    label, transform = _closure_op(op)
    idx = index if index is not None else FactorIndex(w, l_max)
    lo, hi = n // 3, 2 * n // 3
    misses: list[ClosureWitness] = []
    for length in range(1, l_max + 1):
        groups = idx.groups(length)
        fset = idx.factor_set(length)
        ids = idx.ids(length)
        window = ids[lo : min(hi, idx.starts(length))]
        uniq, first_rel = np.unique(window, return_index=True)
        length_misses = []
        for g, rel in zip(uniq, first_rel):
            pos = lo + int(rel)
            factor = idx.factor_at(pos, length)
            image = transform(factor)
            if image not in fset:
                length_misses.append(
                    ClosureWitness(label, factor, image, False, pos + 1, None)
                )
        length_misses.sort(key=lambda m: m.factor)
        misses.extend(length_misses)
    return misses


def write_witness_csv(witnesses: list[ClosureWitness], out: TextIO) -> None:
    writer = csv.writer(out)
    writer.writerow(["op", "factor", "image", "verdict", "position"])
    for wit in witnesses:
        writer.writerow(
            [
                wit.op,
                format_symbols(wit.factor),
                format_symbols(wit.image),
                "found" if wit.found else "absent",
                wit.image_position if wit.found else wit.factor_position,
            ]
        )


# ---------------------------------------------------------------------------
# equal-run blocks


@dataclass(frozen=True)
class EqualRunBlock:
    """A maximal factor whose runs all share one length (the exponent)."""

    factor: tuple[int, ...]
    exponent: int
    run_count: int
    start: int  # 1-based
    end: int  # 1-based inclusive


def equal_run_blocks(
    w: Word,
    *,
    min_exponent: int = 1,
    min_runs: int = 1,
) -> list[EqualRunBlock]:
    """Maximal blocks of consecutive runs sharing one length.

    Filters keep the output small on long words; the defaults return
    every block, which is only sensible for short inputs.
    """
    arr = w.to_array()
    lengths, letters = _run_arrays(arr)
    if lengths.size == 0:
        return []
    run_starts = np.concatenate(
        (np.zeros(1, dtype=np.int64), np.cumsum(lengths)[:-1])
    )
    change = np.flatnonzero(lengths[1:] != lengths[:-1])
    grp_start = np.concatenate((np.zeros(1, dtype=np.int64), change + 1))
    grp_end = np.concatenate((change, np.array([lengths.size - 1])))
    out: list[EqualRunBlock] = []
    for a, b in zip(grp_start, grp_end):
        exponent = int(lengths[a])
        runs = int(b - a + 1)
        if exponent < min_exponent or runs < min_runs:
            continue
        start = int(run_starts[a])
        end = int(run_starts[b] + lengths[b])  # exclusive
        out.append(
            EqualRunBlock(
                tuple(arr[start:end].tolist()), exponent, runs, start + 1, end
            )
        )
    return out


# ---------------------------------------------------------------------------
# palindromic expansions


def phi_inverse_palindrome_check(order: CyclicOrder, k_max: int) -> bool:
    """Exhaustively check that every directive word up to length k_max
    expands to an odd-length palindrome.

    Only meaningful (and only accepted) for 2-letter alphabets of odd
    letters, where the expansion of a single letter is an odd palindrome
    and the pseudo-inverse preserves that shape.
    """
    alphabet = order.alphabet
    if alphabet.size != 2 or any(a % 2 == 0 for a in alphabet):
        raise ValueError("check requires a 2-letter alphabet of odd letters")
    letters = alphabet.letters
    stack: list[tuple[int, ...]] = [(a,) for a in letters]
    while stack:
        u = stack.pop()
        expansion = phi_inverse_prefix(Word(u, alphabet), order)
        if len(expansion) % 2 == 0 or not is_palindrome(expansion):
            return False
        if len(u) < k_max:
            stack.extend(u + (a,) for a in letters)
    return True
