"""Pseudo-inverse expansions under a cyclic order.

Fixing a cyclic arrangement of the alphabet makes run-length coding
invertible: an exponent word expands into runs whose bases walk the
cycle.  Chaining expansions through a control word and taking the
first letters of successive codings are mutually inverse on finite
directive words.
"""

from smoothwords import (
    CyclicOrder,
    Word,
    expand_stream,
    format_symbols,
    is_palindrome,
    phi_inverse_prefix,
    phi_prefix,
    pseudo_inverse,
    pseudo_inverse_chain,
    pseudo_inverse_with_base,
)

# -- one expansion step under the order 2 -> 4 -> 3 -> 2 ----------------------

order = CyclicOrder.from_letters((2, 4, 3))
print("expand (2,4) from 2:", format_symbols(pseudo_inverse(2, Word((2, 4)), order)))

# -- a three-step chain, with its split identities -----------------------------

chain = pseudo_inverse_chain((2, 3, 2), Word((2, 4)), order)
print(f"chain through (2,3,2): {len(chain)} letters")
print("  ", format_symbols(chain))
inner = pseudo_inverse_chain((3, 2), Word((2, 4)), order)
assert pseudo_inverse_chain((2,), inner, order) == chain
print("composition law verified")
print()

# -- explicit bases, exactly invertible ----------------------------------------

print("2,3 over 1,2:", format_symbols(pseudo_inverse_with_base(Word((2, 3)), Word((1, 2)))))
print()

# -- directive words: expansion and first-letter projection --------------------

order13 = CyclicOrder.from_letters((1, 3))
for directive in [(1, 3), (3, 3, 1), (3, 1, 3, 3)]:
    u = Word(directive, order13.alphabet)
    expansion = phi_inverse_prefix(u, order13)
    back = phi_prefix(expansion, order13, len(u))
    print(
        f"directive {directive} -> {format_symbols(expansion)} "
        f"(palindrome: {is_palindrome(expansion)}, round-trip: {back == u})"
    )
print()

# -- streaming keeps memory at one cursor per chain level ----------------------

stream = expand_stream((2, 3, 2, 4, 2), Word((3, 4)), order)
head = [next(stream) for _ in range(25)]
print("first 25 letters of a deep chain:", format_symbols(head))
