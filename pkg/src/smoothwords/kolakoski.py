"""Generalized Kolakoski words: the fixpoints of run-length coding.

For every base sequence ``u`` with no two equal adjacent letters there
is exactly one word equal to its own run-length sequence whose j-th run
uses letter ``u_j``.  The generator below reads its own output: run j
is ``u_j`` repeated ``w[j]`` times.  The only subtlety is the head of
the word, where a run contains the very position that defines its
length; there the length must equal the run's own letter (the first
letter of run j is at position j in that case), which also seeds
``w[1] = u_1``.

Base sequences are restricted to the eventually periodic ones
(preperiod + period), which covers every word exercised here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .words import Alphabet, Word, _run_arrays

__all__ = [
    "BaseSequenceSpec",
    "KolakoskiStream",
    "kolakoski_prefix",
    "kolakoski_stream",
    "verify_fixpoint_prefix",
]


@dataclass(frozen=True)
class BaseSequenceSpec:
    """An eventually periodic base sequence ``preperiod · period^ω``.

    Adjacent letters must differ everywhere in the realised infinite
    sequence: inside each part, across the preperiod/period seam, and
    across the period's wrap-around.
    """

    alphabet: Alphabet
    period: tuple[int, ...]
    preperiod: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        period = tuple(int(x) for x in self.period)
        preperiod = tuple(int(x) for x in self.preperiod)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "preperiod", preperiod)
        if not period:
            raise ValueError("period must be nonempty")
        for x in preperiod + period:
            if x not in self.alphabet:
                raise ValueError(f"base letter {x} outside the alphabet")
        seq = preperiod + period
        if any(a == b for a, b in zip(seq, seq[1:])):
            raise ValueError("adjacent base letters must differ")
        if len(period) == 1 or period[-1] == period[0]:
            if len(period) == 1:
                raise ValueError("period of length 1 repeats a letter")
            raise ValueError("period seam repeats a letter")
        if preperiod and preperiod[-1] == period[0]:
            raise ValueError("preperiod/period seam repeats a letter")

    def base_letter(self, j: int) -> int:
        """The j-th (1-based) letter of the realised base sequence."""
        if j < 1:
            raise ValueError("base index is 1-based")
        j -= 1
        if j < len(self.preperiod):
            return self.preperiod[j]
        return self.period[(j - len(self.preperiod)) % len(self.period)]

    def base_slice(self, j0: int, j1: int) -> np.ndarray:
        """Letters for run indices ``j0..j1`` inclusive (1-based)."""
        idx = np.arange(j0 - 1, j1)
        out = np.empty(idx.size, dtype=np.int64)
        pre = np.asarray(self.preperiod, dtype=np.int64)
        per = np.asarray(self.period, dtype=np.int64)
        in_pre = idx < pre.size
        if pre.size:
            out[in_pre] = pre[idx[in_pre]]
        rest = idx[~in_pre] - pre.size
        out[~in_pre] = per[rest % per.size]
        return out


def _prefix_array(spec: BaseSequenceSpec, m: int) -> np.ndarray:
    out = np.empty(m, dtype=np.int64)
    written = 0
    run = 1  # 1-based index of the next run to expand
    while written < m:
        if run > written:
            # self-referential head: this run contains the position that
            # defines its own length, so the length is the run's letter
            letter = spec.base_letter(run)
            take = min(letter, m - written)
            out[written : written + take] = letter
            written += take
            run += 1
        else:
            hi = written  # runs run..hi have known lengths in out already
            lengths = out[run - 1 : hi]
            letters = spec.base_slice(run, hi)
            expanded = np.repeat(letters, lengths)
            take = min(expanded.size, m - written)
            out[written : written + take] = expanded[:take]
            written += take
            run = hi + 1
    return out


def kolakoski_prefix(spec: BaseSequenceSpec, m: int) -> Word:
    """The first ``m`` letters of the run-length fixpoint over ``spec``.

    The result is prefix-marked: its final run may continue beyond the
    requested length.
    """
    if m < 1:
        raise ValueError("m must be positive")
    return Word.from_array(
        _prefix_array(spec, m), spec.alphabet, is_prefix=True, validate=False
    )


@dataclass
class KolakoskiStream:
    """Lazy letter stream of a run-length fixpoint.

    A two-pointer self-reading cursor: ``write_count`` letters have been
    emitted, ``read_index`` is the run whose length is consumed next,
    and ``buffer`` holds exactly the emitted letters not yet consumed.
    The pointer gap (buffer length) is the stream's whole memory beyond
    O(1) state; ``max_gap`` records its high-water mark.

    Single-owner mutable state: one thread at a time.
    """

    spec: BaseSequenceSpec
    write_count: int = 0
    read_index: int = 1
    pending_letter: int = 0
    pending_count: int = 0
    buffer: deque = field(default_factory=deque)
    max_gap: int = 0
    _swallow_next: bool = field(default=False, repr=False)

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        if self.pending_count == 0:
            self._start_run()
        self.pending_count -= 1
        letter = self.pending_letter
        self.write_count += 1
        if self._swallow_next:
            # this letter sits at the position the current run's length
            # was read from; it is already consumed
            self._swallow_next = False
        else:
            self.buffer.append(letter)
        gap = len(self.buffer)
        if gap > self.max_gap:
            self.max_gap = gap
        return letter

    def _start_run(self) -> None:
        j = self.read_index
        letter = self.spec.base_letter(j)
        if j > self.write_count:
            length = letter
            self._swallow_next = True
        else:
            length = self.buffer.popleft()
        self.pending_letter = letter
        self.pending_count = length
        self.read_index += 1

    def take(self, m: int) -> Word:
        """Collect the next ``m`` letters as a prefix-marked word."""
        out = np.fromiter(self, dtype=np.int64, count=m)
        return Word.from_array(
            out, self.spec.alphabet, is_prefix=True, validate=False
        )


def kolakoski_stream(spec: BaseSequenceSpec) -> KolakoskiStream:
    """A fresh lazy stream over ``spec``; equals ``kolakoski_prefix`` pullwise."""
    return KolakoskiStream(spec)


def verify_fixpoint_prefix(w: Word) -> bool:
    """Check the fixpoint property on a prefix.

    True iff the run-length sequence of ``w``, with its (truncated) final
    exponent dropped, is a prefix of ``w`` itself.
    """
    arr = w.to_array()
    if arr.size == 0:
        raise ValueError("word must be nonempty")
    lengths, _ = _run_arrays(arr)
    exps = lengths[:-1]
    return bool((exps == arr[: exps.size]).all())
