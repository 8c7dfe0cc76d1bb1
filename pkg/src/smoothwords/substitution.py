"""Primitive substitutions whose fixpoints are generalized Kolakoski words.

Construction happens at the level of blocks: each block symbol stands
for a short word over the alphabet (``Ai`` for the i-th cycle letter
repeated n times, ``Bi`` for a pair of adjacent cycle letters repeated r
times each), and the substitution maps block symbols to block words.
Three families are provided:

* 2-letter alphabets of even letters and of odd letters (the classical
  two- and three-block systems over symbols A, B, C);
* remainder-0 alphabets of any size;
* positive-remainder alphabets of even size (two parity sub-cases that
  share one indexing scheme).

Raw subscripts in the general rules are reduced into range modulo n
(for A-blocks) and modulo n/2 (for B-blocks) at construction time.

Substitutions are immutable after construction; iteration is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import NotProlongable
from .expansion import CyclicOrder
from .kolakoski import BaseSequenceSpec, kolakoski_prefix
from .words import Alphabet, Word

__all__ = [
    "Block",
    "Substitution",
    "IncidenceMatrix",
    "build_sing_even",
    "build_sing_odd",
    "build_sigma_r0",
    "build_sigma_even_n",
    "build_substitution",
    "apply",
    "iterate",
    "flatten",
    "incidence_matrix",
    "is_primitive",
    "verify_substitution_fixpoint",
]

BlockWord = tuple[str, ...]


@dataclass(frozen=True)
class Block:
    """A named block and the word over the alphabet it stands for."""

    symbol: str
    expansion: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.expansion:
            raise ValueError("block expansion must be nonempty")


@dataclass
class Substitution:
    """A block morphism: rules from block symbols to nonempty block words."""

    rules: dict[str, BlockWord]
    blocks: dict[str, Block]
    alphabet: Alphabet
    order: CyclicOrder | None = None
    seed: str = ""
    _expansions: dict[str, np.ndarray] = field(
        default_factory=dict, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if not self.rules:
            raise ValueError("substitution needs at least one rule")
        for sym, rhs in self.rules.items():
            if not rhs:
                raise ValueError(f"rule for {sym} is empty")
            for s in rhs:
                if s not in self.rules:
                    raise ValueError(f"rule for {sym} uses unknown symbol {s}")
            if sym not in self.blocks:
                raise ValueError(f"no block definition for {sym}")
        if not self.seed:
            self.seed = _find_seed(self.rules)
        self._expansions = {
            s: np.asarray(b.expansion, dtype=np.int64)
            for s, b in self.blocks.items()
        }

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(self.rules)

    def rule_table(self) -> str:
        """The rules, one ``sym -> rhs`` line per symbol."""
        lines = [
            f"{sym} -> {' '.join(rhs)}" for sym, rhs in self.rules.items()
        ]
        return "\n".join(lines)


def _find_seed(rules: dict[str, BlockWord]) -> str:
    """First symbol whose rule starts with itself, so iteration converges."""
    for sym, rhs in rules.items():
        if rhs[0] == sym:
            return sym
    return ""


def apply(sub: Substitution, bw: Sequence[str]) -> BlockWord:
    """Homomorphic extension of the rules to block words."""
    out: list[str] = []
    for sym in bw:
        try:
            out.extend(sub.rules[sym])
        except KeyError:
            raise ValueError(f"unknown block symbol {sym}") from None
    return tuple(out)


def iterate(sub: Substitution, seed: str, t: int) -> BlockWord:
    """Apply the substitution ``t`` times to the single symbol ``seed``."""
    if seed not in sub.rules:
        raise ValueError(f"unknown block symbol {seed}")
    if t < 0:
        raise ValueError("t must be non-negative")
    bw: BlockWord = (seed,)
    for _ in range(t):
        bw = apply(sub, bw)
    return bw


def flatten(sub: Substitution, bw: Sequence[str]) -> Word:
    """Replace each block symbol by its expansion over the alphabet."""
    if not bw:
        return Word((), sub.alphabet)
    parts = [sub._expansions[sym] for sym in bw]
    return Word.from_array(
        np.concatenate(parts), sub.alphabet, validate=False
    )


# ---------------------------------------------------------------------------
# incidence matrix and primitivity


@dataclass(frozen=True)
class IncidenceMatrix:
    """Symbol-occurrence counts: entry (i, j) counts symbol i in rule j."""

    symbols: tuple[str, ...]
    matrix: np.ndarray

    def power(self, t: int) -> np.ndarray:
        return np.linalg.matrix_power(self.matrix, t)


def incidence_matrix(sub: Substitution) -> IncidenceMatrix:
    syms = sub.symbols
    pos = {s: i for i, s in enumerate(syms)}
    m = np.zeros((len(syms), len(syms)), dtype=np.int64)
    for j, sym in enumerate(syms):
        for s in sub.rules[sym]:
            m[pos[s], j] += 1
    return IncidenceMatrix(syms, m)


def is_primitive(sub: Substitution) -> tuple[bool, int | None]:
    """Least power of the incidence matrix that is entrywise positive.

    Returns ``(True, k)`` with the least such k, which is at most
    (s-1)^2 + 1 for s symbols when it exists, else ``(False, None)``.
    """
    m = incidence_matrix(sub).matrix
    s = m.shape[0]
    reach = (m > 0).astype(np.int64)
    step = reach.copy()
    bound = (s - 1) ** 2 + 1
    for k in range(1, bound + 1):
        if k > 1:
            step = (step @ reach > 0).astype(np.int64)
        if step.all():
            return True, k
    return False, None


# ---------------------------------------------------------------------------
# builders


def _block_table(pairs: Iterable[tuple[str, tuple[int, ...]]]) -> dict[str, Block]:
    return {sym: Block(sym, exp) for sym, exp in pairs}


def build_sing_even(c1: int, c2: int) -> Substitution:
    """The two-block system for a 2-letter alphabet of even letters.

    Blocks A = c1 c1 and B = c2 c2; with c1 = 2m and c2 = 2n the rules
    are A -> A^m B^m and B -> A^n B^n.
    """
    if c1 % 2 or c2 % 2 or c1 < 2 or c2 < 2:
        raise ValueError("letters must be positive even integers")
    if c1 >= c2:
        raise ValueError("letters must be given in increasing order")
    m, n = c1 // 2, c2 // 2
    rules = {
        "A": ("A",) * m + ("B",) * m,
        "B": ("A",) * n + ("B",) * n,
    }
    blocks = _block_table([("A", (c1, c1)), ("B", (c2, c2))])
    return Substitution(rules, blocks, Alphabet((c1, c2)), seed="A")


def build_sing_odd(c1: int, c2: int) -> Substitution:
    """The three-block system for a 2-letter alphabet of odd letters.

    Blocks A = c1 c1, B = c1 c2, C = c2 c2; with c1 = 2m+1 and c2 = 2n+1
    the rules are A -> A^m B C^m, B -> A^m B C^n, C -> A^n B C^n.
    The degenerate case c1 = 1 (m = 0, rule A -> B) is rejected.
    """
    if c1 % 2 == 0 or c2 % 2 == 0 or c1 < 1 or c2 < 1:
        raise ValueError("letters must be positive odd integers")
    if c1 >= c2:
        raise ValueError("letters must be given in increasing order")
    if c1 == 1:
        raise ValueError("c1 = 1 degenerates the A rule; not constructible")
    m, n = (c1 - 1) // 2, (c2 - 1) // 2
    rules = {
        "A": ("A",) * m + ("B",) + ("C",) * m,
        "B": ("A",) * m + ("B",) + ("C",) * n,
        "C": ("A",) * n + ("B",) + ("C",) * n,
    }
    blocks = _block_table(
        [("A", (c1, c1)), ("B", (c1, c2)), ("C", (c2, c2))]
    )
    return Substitution(rules, blocks, Alphabet((c1, c2)), seed="A")


def _order_quotients(order: CyclicOrder) -> tuple[int, tuple[int, ...]]:
    alphabet = order.alphabet
    r = alphabet.remainder
    if r is None:
        raise ValueError("alphabet letters must share a remainder mod n")
    n = alphabet.size
    qs = tuple((c - r) // n for c in order.arrangement)
    return r, qs


def build_sigma_r0(alphabet: Alphabet, order: CyclicOrder) -> Substitution:
    """The substitution for remainder-0 alphabets of any size.

    With cycle letters c_1..c_n (all multiples of n) and blocks
    A_i = c_i^n, each A_i maps to A_1^{q_i} A_2^{q_i} ... A_n^{q_i}.
    """
    if order.alphabet != alphabet:
        raise ValueError("order must arrange the given alphabet")
    r, qs = _order_quotients(order)
    if r != 0:
        raise ValueError("alphabet remainder must be 0")
    n = alphabet.size
    names = [f"A{i}" for i in range(1, n + 1)]
    rules: dict[str, BlockWord] = {}
    for i, q in enumerate(qs, start=1):
        if q < 1:
            raise ValueError("every quotient must be positive when r = 0")
        rhs: list[str] = []
        for name in names:
            rhs.extend([name] * q)
        rules[f"A{i}"] = tuple(rhs)
    blocks = _block_table(
        (f"A{i}", (c,) * n)
        for i, c in enumerate(order.arrangement, start=1)
    )
    return Substitution(rules, blocks, alphabet, order=order, seed="A1")


def build_sigma_even_n(alphabet: Alphabet, order: CyclicOrder) -> Substitution:
    """The substitution for positive-remainder alphabets of even size.

    Blocks are A_i = c_i^n for the n cycle letters and B_i =
    c_{2i-1}^r c_{2i}^r for the n/2 adjacent pairs.  The two parity
    sub-cases of r share the same A rules; they differ only in where the
    exponent switches from q_{2k+1} to q_{2k+2} inside the B rules.
    At most one quotient may be zero (its A powers simply vanish).
    """
    if order.alphabet != alphabet:
        raise ValueError("order must arrange the given alphabet")
    r, qs = _order_quotients(order)
    n = alphabet.size
    if r == 0:
        raise ValueError("remainder must be positive; use the r = 0 builder")
    if n % 2:
        raise ValueError("alphabet size must be even when the remainder is positive")
    m = n // 2
    h = r // 2
    if sum(1 for q in qs if q == 0) > 1:
        raise ValueError("at most one quotient may be zero")

    def a_name(raw: int) -> str:
        return f"A{(raw - 1) % n + 1}"

    def b_name(raw: int) -> str:
        return f"B{(raw - 1) % m + 1}"

    c = order.arrangement
    rules: dict[str, BlockWord] = {}

    def group(a_lo: int, b_raw: int, lead_q: int, trail_q: int) -> list[str]:
        part = [a_name(a_lo)] * lead_q
        part.append(b_name(b_raw))
        part.extend([a_name(a_lo + 1)] * trail_q)
        return part

    for i in range(1, n + 1):
        q = qs[i - 1]
        if i % 2:  # odd index: offsets (i-1)r and ((i-1)/2)r
            a_off = (i - 1) * r
            b_off = (i - 1) // 2 * r
        else:  # even index: offsets i*r and (i/2)*r
            a_off = i * r
            b_off = i // 2 * r
        rhs: list[str] = []
        for t in range(1, m + 1):
            rhs.extend(group(a_off + 2 * t - 1, b_off + t, q, q))
        rules[f"A{i}"] = tuple(rhs)

    for k in range(m):
        qa = qs[2 * k]  # q_{2k+1}
        qb = qs[2 * k + 1]  # q_{2k+2}
        rhs = []
        for t in range(1, r + 1):
            if r % 2 == 0:
                lead = trail = qa if t <= h else qb
            else:
                lead = qa if t <= h + 1 else qb
                trail = qa if t <= h else qb
            rhs.extend(group(2 * k * r + 2 * t - 1, k * r + t, lead, trail))
        rules[f"B{k + 1}"] = tuple(rhs)

    block_pairs = [
        (f"A{i}", (c[i - 1],) * n) for i in range(1, n + 1)
    ] + [
        (f"B{i}", (c[2 * i - 2],) * r + (c[2 * i - 1],) * r)
        for i in range(1, m + 1)
    ]
    # reorder rules so A's come before B's in a fixed symbol order
    ordered = {f"A{i}": rules[f"A{i}"] for i in range(1, n + 1)}
    ordered.update({f"B{i}": rules[f"B{i}"] for i in range(1, m + 1)})
    sub = Substitution(
        ordered, _block_table(block_pairs), alphabet, order=order, seed=""
    )
    if not sub.seed:
        raise ValueError("no prolongable symbol; construction failed")
    return sub


def build_substitution(alphabet: Alphabet, order: CyclicOrder) -> Substitution:
    """Dispatch on the alphabet's arithmetic: r = 0 or r > 0 with even n."""
    r = alphabet.remainder
    if r is None:
        raise ValueError("alphabet letters must share a remainder mod n")
    if r == 0:
        return build_sigma_r0(alphabet, order)
    return build_sigma_even_n(alphabet, order)


# ---------------------------------------------------------------------------
# fixpoint verification


def verify_substitution_fixpoint(
    sub: Substitution, spec: BaseSequenceSpec, m: int
) -> bool:
    """Whether the iterated substitution agrees with the fixpoint word.

    Iterates from the substitution's seed until the flattened image
    reaches ``m`` letters, then compares them with the run-length
    fixpoint prefix over ``spec``.
    """
    seed = sub.seed
    if not seed or sub.rules[seed][0] != seed:
        raise NotProlongable("substitution has no prolongable seed")
    lengths = {s: len(b.expansion) for s, b in sub.blocks.items()}
    bw: BlockWord = (seed,)
    flat_len = lengths[seed]
    while flat_len < m:
        nxt = apply(sub, bw)
        nxt_len = sum(lengths[s] for s in nxt)
        if nxt_len <= flat_len:
            raise ValueError("substitution does not grow from its seed")
        bw, flat_len = nxt, nxt_len
    image = flatten(sub, bw).to_array()[:m]
    target = kolakoski_prefix(spec, m).to_array()
    return bool((image == target).all())
