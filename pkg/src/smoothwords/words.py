"""Alphabets, finite words, run-length coding and the run-length derivative.

A word over an ordered alphabet ``a_1 < a_2 < ... < a_n`` of positive
integers decomposes uniquely into maximal runs.  The pair of sequences
(run lengths, run letters) is the run-length coding; the derivative is
the run-length sequence with short edge runs trimmed.  These operators,
together with reversal and letter permutations, are the primitive
vocabulary everything else in the package builds on.

All types here are immutable values and every operation is a pure
function, so they are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .errors import InvalidRuns, NotDifferentiable

__all__ = [
    "Alphabet",
    "Word",
    "RunDecomposition",
    "Permutation",
    "rle_encode",
    "rle_reconstruct",
    "derivative",
    "differentiability_order",
    "is_smooth_finite",
    "reverse",
    "apply_permutation",
    "is_palindrome",
    "parse_symbols",
    "format_symbols",
    "read_words",
    "write_words",
]

# Vectorise membership checks / run scans above this size.
_NUMPY_CUTOVER = 2048


@dataclass(frozen=True)
class Alphabet:
    """An ordered alphabet of positive integer letters.

    The letters' common remainder modulo ``n`` (the alphabet size), when
    it exists, controls most of the arithmetic in this package; alphabets
    whose letters disagree modulo ``n`` are still usable but report a
    ``remainder`` of ``None``.
    """

    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        if len(letters) < 2:
            raise ValueError("alphabet needs at least two letters")
        if any(x < 1 for x in letters):
            raise ValueError("letters must be positive integers")
        if any(a >= b for a, b in zip(letters, letters[1:])):
            raise ValueError("letters must be strictly increasing")

    @property
    def size(self) -> int:
        return len(self.letters)

    @property
    def largest(self) -> int:
        return self.letters[-1]

    @property
    def remainder(self) -> int | None:
        """Common remainder of all letters modulo the alphabet size, or None."""
        n = self.size
        r = self.letters[0] % n
        return r if all(x % n == r for x in self.letters) else None

    @property
    def quotients(self) -> tuple[int, ...] | None:
        """Per-letter quotients q_i with a_i = n*q_i + r, when r is uniform."""
        r = self.remainder
        if r is None:
            return None
        n = self.size
        return tuple((x - r) // n for x in self.letters)

    def __contains__(self, letter: int) -> bool:
        return letter in self.letters

    def index(self, letter: int) -> int:
        return self.letters.index(letter)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)


@dataclass(frozen=True, eq=False)
class Word:
    """A finite sequence of positive integer symbols.

    ``alphabet`` is optional: exponent words (images of the run-length
    coding) carry arbitrary positive integers and no alphabet.  When an
    alphabet is present every symbol must belong to it.

    ``is_prefix`` marks the word as a prefix of a longer (typically
    infinite) word, which makes the final run length a lower bound only.
    Operators that care (run-length coding, fixpoint checks) honour the
    mark; it never affects equality.

    Equality and hashing compare symbols only.
    """

    symbols: tuple[int, ...]
    alphabet: Alphabet | None = None
    is_prefix: bool = False
    _array: np.ndarray | None = field(
        default=None, repr=False, compare=False, init=False
    )

    def __post_init__(self) -> None:
        symbols = self.symbols
        if not isinstance(symbols, tuple):
            symbols = tuple(int(x) for x in symbols)
            object.__setattr__(self, "symbols", symbols)
        if self.alphabet is not None and symbols:
            if len(symbols) >= _NUMPY_CUTOVER:
                ok = bool(
                    np.isin(self.to_array(), self.alphabet.letters).all()
                )
            else:
                ok = all(s in self.alphabet for s in symbols)
            if not ok:
                raise ValueError("word contains symbols outside its alphabet")

    @classmethod
    def from_array(
        cls,
        arr: np.ndarray,
        alphabet: Alphabet | None = None,
        *,
        is_prefix: bool = False,
        validate: bool = True,
    ) -> "Word":
        """Build a word from a numpy array, optionally skipping validation."""
        w = cls.__new__(cls)
        object.__setattr__(w, "symbols", tuple(arr.tolist()))
        object.__setattr__(w, "alphabet", alphabet)
        object.__setattr__(w, "is_prefix", is_prefix)
        object.__setattr__(w, "_array", np.asarray(arr, dtype=np.int64))
        if validate and alphabet is not None and len(w):
            if not bool(np.isin(w._array, alphabet.letters).all()):
                raise ValueError("word contains symbols outside its alphabet")
        return w

    def to_array(self) -> np.ndarray:
        """The symbols as an int64 numpy array (cached)."""
        if self._array is None:
            object.__setattr__(
                self, "_array", np.array(self.symbols, dtype=np.int64)
            )
        return self._array

    def replace(self, **kwargs) -> "Word":
        fields = {
            "symbols": self.symbols,
            "alphabet": self.alphabet,
            "is_prefix": self.is_prefix,
        }
        fields.update(kwargs)
        return Word(**fields)

    def __len__(self) -> int:
        return len(self.symbols)

    def __bool__(self) -> bool:
        return bool(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, item):
        got = self.symbols[item]
        if isinstance(item, slice):
            return Word(got, self.alphabet)
        return got

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Word):
            return self.symbols == other.symbols
        if isinstance(other, (tuple, list)):
            return self.symbols == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        body = " ".join(map(str, self.symbols)) if self.symbols else "ε"
        return f"Word({body})"


@dataclass(frozen=True)
class RunDecomposition:
    """Run-length coding of a word: exponents (run lengths) and bases
    (run letters), plus a flag marking the final exponent as truncated.

    Invariants: equal lengths, adjacent bases distinct, and repeating
    each base by its exponent reproduces the source word.
    """

    exponents: Word
    bases: Word
    last_run_truncated: bool = False

    def __post_init__(self) -> None:
        if len(self.exponents) != len(self.bases):
            raise InvalidRuns("exponents and bases must have equal length")

    def __len__(self) -> int:
        return len(self.exponents)

    def runs(self) -> Iterator[tuple[int, int]]:
        """Yield (base, exponent) pairs in order."""
        return zip(self.bases.symbols, self.exponents.symbols)


class Permutation:
    """A bijection on an alphabet's letters, applied symbol-wise to words."""

    def __init__(self, mapping: dict[int, int]):
        self.mapping = dict(mapping)
        if set(self.mapping) != set(self.mapping.values()):
            raise ValueError("mapping is not a bijection on its domain")

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Permutation":
        return cls({a: a for a in alphabet})

    @classmethod
    def complement(cls, alphabet: Alphabet) -> "Permutation":
        """The unique nonidentical permutation of a 2-letter alphabet."""
        if alphabet.size != 2:
            raise ValueError("complement is defined for 2-letter alphabets")
        a, b = alphabet.letters
        return cls({a: b, b: a})

    @classmethod
    def all_of(cls, alphabet: Alphabet) -> Iterator["Permutation"]:
        """All permutations of the alphabet, identity first."""
        import itertools

        letters = alphabet.letters
        for image in sorted(itertools.permutations(letters)):
            yield cls(dict(zip(letters, image)))

    def __call__(self, letter: int) -> int:
        try:
            return self.mapping[letter]
        except KeyError:
            raise ValueError(
                f"symbol {letter} outside the permutation's domain"
            ) from None

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.mapping.items())

    def label(self) -> str:
        """Deterministic textual form, e.g. 'perm:1->2,2->1'."""
        body = ",".join(f"{k}->{v}" for k, v in sorted(self.mapping.items()))
        return f"perm:{body}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.mapping == other.mapping

    def __repr__(self) -> str:
        return f"Permutation({self.mapping!r})"


# ---------------------------------------------------------------------------
# run-length coding


def _run_arrays(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(lengths, letters) of the maximal runs of ``arr``."""
    if arr.size == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    change = np.flatnonzero(arr[1:] != arr[:-1])
    starts = np.concatenate((np.zeros(1, dtype=np.int64), change + 1))
    bounds = np.concatenate((starts, np.array([arr.size], dtype=np.int64)))
    return np.diff(bounds), arr[starts]


def rle_encode(w: Word) -> RunDecomposition:
    """Run-length code a word into exponents and bases.

    Each run is maximal, so adjacent bases always differ.  The exponent
    word carries no alphabet (run lengths are arbitrary positive
    integers); the base word keeps the source alphabet.  A prefix-marked
    input yields ``last_run_truncated=True``: its final exponent is only
    a lower bound for the run it came from.
    """
    lengths, letters = _run_arrays(w.to_array())
    exponents = Word.from_array(lengths, None, validate=False)
    bases = Word.from_array(letters, w.alphabet, validate=False)
    return RunDecomposition(exponents, bases, last_run_truncated=w.is_prefix)


def rle_reconstruct(rd: RunDecomposition) -> Word:
    """Rebuild the word a run decomposition came from.

    Rejects decompositions with adjacent equal bases (the runs would
    merge, so no word has that coding) or non-positive exponents.
    """
    exps = rd.exponents.to_array()
    bases = rd.bases.to_array()
    if exps.size and (exps < 1).any():
        raise InvalidRuns("exponents must be positive")
    if bases.size > 1 and (bases[1:] == bases[:-1]).any():
        raise InvalidRuns("adjacent bases must differ")
    flat = np.repeat(bases, exps)
    return Word.from_array(flat, rd.bases.alphabet, validate=False)


# ---------------------------------------------------------------------------
# derivative


def derivative(w: Word) -> Word:
    """The run-length derivative: run lengths with short edge runs trimmed.

    Defined only when every interior run length is an alphabet letter and
    no run is longer than the largest letter ``a_n``; otherwise raises
    :class:`NotDifferentiable`.  Edge runs shorter than ``a_n`` are
    discarded; edge runs of length exactly ``a_n`` are kept.

    A prefix-marked word first loses its final run unconditionally (its
    true length is unknown), and the result is returned unmarked.
    """
    if w.alphabet is None:
        raise ValueError("derivative needs a word with an alphabet")
    a_n = w.alphabet.largest
    lengths, _ = _run_arrays(w.to_array())
    if w.is_prefix and lengths.size:
        lengths = lengths[:-1]
    if lengths.size == 0:
        return Word((), w.alphabet)
    if int(lengths.max()) > a_n:
        raise NotDifferentiable(f"run longer than a_n={a_n}")
    interior = lengths[1:-1]
    if interior.size and not bool(
        np.isin(interior, w.alphabet.letters).all()
    ):
        raise NotDifferentiable("interior run length outside the alphabet")
    lo = 1 if lengths[0] < a_n else 0
    hi = lengths.size - 1 if lengths[-1] < a_n else lengths.size
    if lengths.size == 1:
        # the single run is both first and last
        trimmed = lengths if lengths[0] == a_n else lengths[:0]
    else:
        trimmed = lengths[lo:hi] if lo <= hi else lengths[:0]
    return Word.from_array(trimmed, w.alphabet, validate=False)


def differentiability_order(w: Word, k: int) -> bool:
    """Whether the derivative stays defined through ``k`` applications."""
    if k < 0:
        raise ValueError("k must be non-negative")
    cur = w
    for _ in range(k):
        if not cur:
            return True  # the empty word differentiates forever
        try:
            cur = derivative(cur)
        except NotDifferentiable:
            return False
    return True


def is_smooth_finite(w: Word) -> bool:
    """Whether a finite word is arbitrarily often differentiable.

    Terminates because the derivative strictly shrinks nonempty words,
    so it suffices to differentiate until the empty word appears.
    """
    cur = w
    while cur:
        try:
            cur = derivative(cur)
        except NotDifferentiable:
            return False
    return True


# ---------------------------------------------------------------------------
# reversal, permutations, palindromes


def reverse(w: Word) -> Word:
    return Word(w.symbols[::-1], w.alphabet)


def apply_permutation(w: Word, sigma: Permutation) -> Word:
    return Word(tuple(sigma(s) for s in w.symbols), w.alphabet)


def is_palindrome(w: Word) -> bool:
    return w.symbols == w.symbols[::-1]


# ---------------------------------------------------------------------------
# shared text format: one word per line, space-separated decimal symbols;
# "b^e" run tokens accepted on input, flat form on output


def parse_symbols(text: str) -> tuple[int, ...]:
    """Parse a word line.  Tokens are decimal letters or ``base^exp`` runs.

    >>> parse_symbols("2^3 4^2 1")
    (2, 2, 2, 4, 4, 1)
    """
    out: list[int] = []
    for token in text.split():
        if "^" in token:
            base_s, exp_s = token.split("^", 1)
            base, exp = int(base_s), int(exp_s)
            if exp < 0:
                raise ValueError(f"negative exponent in token {token!r}")
            out.extend([base] * exp)
        else:
            out.append(int(token))
    return tuple(out)


def format_symbols(symbols: Iterable[int]) -> str:
    """Flat, space-separated decimal form of a word."""
    return " ".join(str(s) for s in symbols)


def read_words(lines: Iterable[str], alphabet: Alphabet | None = None) -> list[Word]:
    """Parse words from text lines, one word per line; ``#`` lines are comments."""
    return [
        Word(parse_symbols(line), alphabet)
        for line in lines
        if line.strip() and not line.lstrip().startswith("#")
    ]


def write_words(words: Iterable[Word], out) -> None:
    """Write words one per line in flat form, newline-terminated."""
    for w in words:
        out.write(format_symbols(w) + "\n")
