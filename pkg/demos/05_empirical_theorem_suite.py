"""Desk-scale verification of the structural properties.

Letter frequencies converge to 1/n on divisible alphabets, every early
factor recurs, occurrence gaps stabilise for the substitutive words,
the factor set looks closed under reversal on odd 2-letter alphabets
and refuses closure under the complement on even ones.  Everything here
measures finite prefixes; witness factors make the negative results
concrete.
"""

from smoothwords import (
    Alphabet,
    BaseSequenceSpec,
    Permutation,
    closure_check,
    equal_run_blocks,
    format_symbols,
    gap_stability_check,
    kolakoski_prefix,
    letter_frequencies,
    max_gap_report,
    recurrence_report,
)

M = 10**6

# -- frequencies ---------------------------------------------------------------

for letters in [(2, 4), (3, 6, 9)]:
    alphabet = Alphabet(letters)
    w = kolakoski_prefix(BaseSequenceSpec(alphabet, letters), M)
    report = letter_frequencies(w, [10**4, M], alphabet)
    print(f"{letters}: ratios at 10^6 = {report.ratios_at(M)} "
          f"(max deviation {report.max_deviation(M):.2e})")
print()

# -- recurrence ------------------------------------------------------------------

w = kolakoski_prefix(BaseSequenceSpec(Alphabet((1, 2)), (1, 2)), M)
recurrence = recurrence_report(w, 24, scan_len=10**4)
print(f"classic word: {len(recurrence.rows)} early factors of length <= 24, "
      f"all recurrent: {recurrence.all_recurrent}")
print()

# -- gap stability ----------------------------------------------------------------

w369 = kolakoski_prefix(BaseSequenceSpec(Alphabet((3, 6, 9)), (3, 6, 9)), M)
stability = gap_stability_check(w369, 8)
print(f"(3, 6, 9): gaps of {stability.compared} factors identical at "
      f"5x10^5 and 10^6 letters: {stability.all_stable}")
gaps = max_gap_report(w369, 2)
print("  longest gaps at length 2:",
      max(r.max_gap for r in gaps.rows if r.length == 2))
print()

# -- reversal closure (odd alphabets) ---------------------------------------------

for letters in [(1, 3), (3, 5)]:
    alphabet = Alphabet(letters)
    w = kolakoski_prefix(BaseSequenceSpec(alphabet, letters), M)
    misses = closure_check(w, "reversal", 10)
    print(f"{letters}: reversal misses (length <= 10): {len(misses)}")
print()

# -- complement non-closure (even alphabet) ---------------------------------------

a24 = Alphabet((2, 4))
w24 = kolakoski_prefix(BaseSequenceSpec(a24, (2, 4)), M)
blocks = equal_run_blocks(w24, min_exponent=4, min_runs=4)
print("maximal equal-run blocks (exponent 4, 4 runs):",
      sorted({b.factor for b in blocks}))
misses = closure_check(w24, Permutation.complement(a24), 16)
print(f"complement misses (length <= 16): {len(misses)}")
block_witnesses = {b.factor for b in blocks} & {m.factor for m in misses}
for factor in sorted(block_witnesses):
    print("  block factor with absent complement:", format_symbols(factor))
