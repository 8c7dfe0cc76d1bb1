"""Generating the fixpoints of run-length coding.

For every base sequence with distinct adjacent letters there is exactly
one word that equals its own run-length sequence.  The generator reads
its own output, so a prefix of any length comes out of constant
bookkeeping plus the letters themselves; the streaming variant keeps
only the letters between the read and write pointers.
"""

import time

from smoothwords import (
    Alphabet,
    BaseSequenceSpec,
    format_symbols,
    kolakoski_prefix,
    kolakoski_stream,
    rle_encode,
    verify_fixpoint_prefix,
)

# -- the classic word over {1,2} ----------------------------------------------

spec = BaseSequenceSpec(Alphabet((1, 2)), (1, 2))
w = kolakoski_prefix(spec, 19)
print("first 19 letters:", format_symbols(w))

rd = rle_encode(w)
print("its run lengths :", format_symbols(rd.exponents), "(a prefix of itself)")
print()

# -- generalized: four letters, all sharing remainder 2 mod 4 ------------------

spec4 = BaseSequenceSpec(Alphabet((2, 6, 10, 14)), (6, 10, 14, 2))
print("K over {2,6,10,14}:", format_symbols(kolakoski_prefix(spec4, 40)))
print()

# -- a million letters, checked against the fixpoint property ------------------

start = time.perf_counter()
big = kolakoski_prefix(spec, 10**6)
generated = time.perf_counter() - start
start = time.perf_counter()
ok = verify_fixpoint_prefix(big)
checked = time.perf_counter() - start
print(f"10^6 letters generated in {generated*1e3:.0f} ms, "
      f"fixpoint verified ({ok}) in {checked*1e3:.0f} ms")
print()

# -- the lazy stream agrees letter for letter and tracks its memory -----------

stream = kolakoski_stream(spec)
prefix = stream.take(10**5)
print("stream equals prefix:", prefix == big[:10**5])
print(
    f"pointer gap high-water mark: {stream.max_gap} letters "
    f"({stream.max_gap / 10**5:.2%} of the output)"
)

# -- any admissible base sequence works, preperiods included -------------------

mixed = BaseSequenceSpec(Alphabet((1, 2, 3)), (1, 2), preperiod=(3,))
w = kolakoski_prefix(mixed, 30)
print("preperiod 3, period (1,2):", format_symbols(w))
print("bases recovered:", format_symbols(rle_encode(w).bases))
