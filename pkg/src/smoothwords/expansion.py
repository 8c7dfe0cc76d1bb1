"""Cyclic-order pseudo-inverses of the run-length coding.

A fixed cyclic order ``b_1 b_2 ... b_n`` of the alphabet pins down every
expansion: the pseudo-inverse of an exponent word ``u`` starting at
letter ``α`` is ``α^u[1] s(α)^u[2] s²(α)^u[3] ...`` where ``s`` is the
cyclic successor.  Chaining pseudo-inverses through a control word grows
exponentially, so every materialising operation takes an output budget
and fails cleanly past it; a run-level streaming expander covers the
long-prefix cases with memory linear in chain depth.

Everything here is pure except :func:`expand_stream`'s returned
iterator, which is a single-owner cursor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import ExpansionBudgetExceeded, InsufficientDepth
from .words import Alphabet, Word, rle_encode

__all__ = [
    "DEFAULT_BUDGET",
    "CyclicOrder",
    "BaseTrack",
    "pseudo_inverse",
    "pseudo_inverse_chain",
    "pseudo_inverse_with_base",
    "phi_inverse_prefix",
    "phi_prefix",
    "expand_stream",
]

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class CyclicOrder:
    """A cyclic arrangement of the alphabet's letters.

    ``arrangement`` lists the letters in cycle order; the successor of
    the last letter wraps to the first.
    """

    alphabet: Alphabet
    arrangement: tuple[int, ...]

    def __post_init__(self) -> None:
        arrangement = tuple(int(x) for x in self.arrangement)
        object.__setattr__(self, "arrangement", arrangement)
        if sorted(arrangement) != list(self.alphabet.letters):
            raise ValueError("arrangement must be a permutation of the alphabet")

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "CyclicOrder":
        """Build order and alphabet together from the cycle listing."""
        arrangement = tuple(int(x) for x in letters)
        return cls(Alphabet(tuple(sorted(arrangement))), arrangement)

    @property
    def size(self) -> int:
        return len(self.arrangement)

    def position(self, letter: int) -> int:
        """0-based position of ``letter`` in the cycle."""
        try:
            return self.arrangement.index(letter)
        except ValueError:
            raise ValueError(f"{letter} is not in the cyclic order") from None

    def successor(self, letter: int) -> int:
        return self.advance(letter, 1)

    def advance(self, letter: int, k: int) -> int:
        """The letter ``k`` cyclic steps after ``letter``."""
        i = self.position(letter)
        return self.arrangement[(i + k) % self.size]

    def letters_from(self, letter: int, count: int) -> np.ndarray:
        """``count`` letters of the cycle starting at ``letter``."""
        i = self.position(letter)
        idx = (i + np.arange(count)) % self.size
        return np.asarray(self.arrangement, dtype=np.int64)[idx]


@dataclass
class BaseTrack:
    """A cursor walking a cyclic order; the per-level state of expansions."""

    order: CyclicOrder
    position: int = 0

    @classmethod
    def at(cls, order: CyclicOrder, letter: int) -> "BaseTrack":
        return cls(order, order.position(letter))

    @property
    def letter(self) -> int:
        return self.order.arrangement[self.position]

    def step(self, k: int = 1) -> None:
        self.position = (self.position + k) % self.order.size


def _check_exponents(u: Word | np.ndarray) -> np.ndarray:
    arr = u.to_array() if isinstance(u, Word) else np.asarray(u, dtype=np.int64)
    if arr.size and int(arr.min()) < 1:
        raise ValueError("exponents must be positive")
    return arr


def pseudo_inverse(
    alpha: int,
    u: Word,
    order: CyclicOrder,
    *,
    budget: int = DEFAULT_BUDGET,
) -> Word:
    """Expand an exponent word into runs whose bases walk the cyclic order.

    The i-th run is the (i-1)-th cyclic successor of ``alpha`` repeated
    ``u[i]`` times; the output length is the sum of the exponents.
    """
    order.position(alpha)  # validates membership
    arr = _check_exponents(u)
    total = int(arr.sum())
    if total > budget:
        raise ExpansionBudgetExceeded(
            f"expansion of {total} symbols exceeds budget {budget}"
        )
    bases = order.letters_from(alpha, arr.size)
    flat = np.repeat(bases, arr)
    return Word.from_array(flat, order.alphabet, validate=False)


def pseudo_inverse_chain(
    p: Word | Iterable[int],
    u: Word,
    order: CyclicOrder,
    *,
    budget: int = DEFAULT_BUDGET,
) -> Word:
    """Apply pseudo-inverses right-to-left through the control word ``p``.

    ``chain(p, u)`` expands with the last letter of ``p`` first, so the
    composition law ``chain(p1+p2, u) = chain(p1, chain(p2, u))`` holds.
    """
    letters = tuple(p.symbols if isinstance(p, Word) else p)
    if not letters:
        return u
    arr = _materialise_runs(_chain_runs(letters, u, order), budget)
    return Word.from_array(arr, order.alphabet, validate=False)


def pseudo_inverse_with_base(u: Word, v: Word) -> Word:
    """Expand exponents ``u`` against an explicit base word ``v``.

    Requires equal lengths and adjacent-distinct bases, which makes the
    expansion exactly invertible by run-length coding.
    """
    if len(u) != len(v):
        raise ValueError("exponent and base words must have equal length")
    exps = _check_exponents(u)
    bases = v.to_array()
    if bases.size > 1 and (bases[1:] == bases[:-1]).any():
        raise ValueError("adjacent bases must differ")
    flat = np.repeat(bases, exps)
    return Word.from_array(flat, v.alphabet, validate=False)


# ---------------------------------------------------------------------------
# streaming expansion
#
# Words travel between levels as (letter, count) runs.  One level turns the
# run (e, mult) — "mult consecutive exponents equal to e" — into mult output
# runs of length e whose bases step through the cyclic order.  Memory is one
# BaseTrack per chain level.


def _runs_of(u: Word) -> Iterator[tuple[int, int]]:
    rd = rle_encode(u)
    yield from ((int(b), int(e)) for e, b in zip(rd.exponents, rd.bases))


def _expand_level(
    alpha: int, runs: Iterator[tuple[int, int]], order: CyclicOrder
) -> Iterator[tuple[int, int]]:
    track = BaseTrack.at(order, alpha)
    for value, mult in runs:
        if value < 1:
            raise ValueError("exponents must be positive")
        for _ in range(mult):
            yield track.letter, value
            track.step()


def _chain_runs(
    p: tuple[int, ...], u: Word, order: CyclicOrder
) -> Iterator[tuple[int, int]]:
    runs: Iterator[tuple[int, int]] = _runs_of(u)
    for alpha in reversed(p):
        order.position(alpha)
        runs = _expand_level(alpha, runs, order)
    return runs


def _materialise_runs(
    runs: Iterator[tuple[int, int]], budget: int
) -> np.ndarray:
    chunks: list[np.ndarray] = []
    letters: list[int] = []
    counts: list[int] = []
    total = 0
    for letter, count in runs:
        letters.append(letter)
        counts.append(count)
        total += count
        if total > budget:
            raise ExpansionBudgetExceeded(
                f"expansion exceeds budget of {budget} symbols"
            )
        if len(letters) >= 65536:
            chunks.append(
                np.repeat(
                    np.array(letters, dtype=np.int64),
                    np.array(counts, dtype=np.int64),
                )
            )
            letters, counts = [], []
    if letters:
        chunks.append(
            np.repeat(
                np.array(letters, dtype=np.int64),
                np.array(counts, dtype=np.int64),
            )
        )
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


def expand_stream(
    p: Word | Iterable[int], u: Word, order: CyclicOrder
) -> Iterator[int]:
    """Letters of ``pseudo_inverse_chain(p, u)`` on demand.

    Never materialises intermediate words; state is a stack of one
    cyclic-order cursor per chain level.  The iterator is a single-owner
    cursor: do not share it between threads mid-iteration.
    """
    letters = tuple(p.symbols if isinstance(p, Word) else p)
    runs: Iterator[tuple[int, int]]
    if letters:
        runs = _chain_runs(letters, u, order)
    else:
        runs = ((int(s), 1) for s in u)
    for letter, count in runs:
        for _ in range(count):
            yield letter


# ---------------------------------------------------------------------------
# the first-letter projection and its expansion inverse, on finite prefixes


def phi_inverse_prefix(
    u: Word,
    order: CyclicOrder,
    *,
    budget: int = DEFAULT_BUDGET,
) -> Word:
    """Expand a directive word: chain its init through the final letter.

    ``u[1..k]`` maps to ``chain(u[1..k-1], (u[k],))``.  The map preserves
    the prefix relation, so growing directive words trace out prefixes of
    a single smooth infinite word.
    """
    if not u:
        raise ValueError("directive word must be nonempty")
    for s in u:
        order.position(s)
    head, last = u.symbols[:-1], u.symbols[-1]
    return pseudo_inverse_chain(
        head, Word((last,), order.alphabet), order, budget=budget
    )


def phi_prefix(w: Word, order: CyclicOrder, m: int) -> Word:
    """First letters of ``w`` and its first ``m-1`` run-length iterates.

    A prefix-marked word loses its final (truncated) exponent at every
    iteration level, so each reported first letter is certain; the depth
    that trimming can support is limited and a too-short prefix raises
    :class:`InsufficientDepth`.  An unmarked word is treated as exact
    and keeps its full run structure, which makes this the left inverse
    of :func:`phi_inverse_prefix` on available depth: expansions of a
    directive word round-trip to the directive exactly.
    """
    if m < 1:
        raise ValueError("m must be positive")
    out: list[int] = []
    cur = w.to_array()
    for depth in range(m):
        if cur.size == 0:
            raise InsufficientDepth(
                f"run-length iterate {depth} of the word is empty"
            )
        out.append(int(cur[0]))
        if depth < m - 1:
            change = np.flatnonzero(cur[1:] != cur[:-1])
            starts = np.concatenate((np.zeros(1, dtype=np.int64), change + 1))
            bounds = np.concatenate(
                (starts, np.array([cur.size], dtype=np.int64))
            )
            cur = np.diff(bounds)
            if w.is_prefix:
                cur = cur[:-1]  # the final run's true length is unknown
    return Word(tuple(out), order.alphabet)
