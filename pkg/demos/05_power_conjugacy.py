"""
When is a torsion element conjugate to its own powers?
======================================================

For u of order p^2 with invariants <l, m>, whether u and u^n are
conjugate depends only on (p, l, m, n): the answer is yes exactly when
n is 1 mod p, except for the family p = 2, m = 2l where even that
fails.  On the character side the question becomes strict equivalence
between chi and n*chi, so a brute-force search confirms every answer
with a witness.
"""

from nottorsion import (
    enumerate_characters,
    format_character_literal,
    parse_character_literal,
    power_conjugacy_criterion,
    power_conjugacy_oracle,
    scalar_mul,
    char_act,
)

# the closed form over a few small types
print("closed-form answers (n coprime to p, n > 1):")
for p, l, m in [(3, 1, 4), (3, 2, 7), (2, 3, 7), (2, 3, 6)]:
    ns = [n for n in range(2, p * p) if n % p]
    verdicts = ", ".join(
        "n=%d:%s" % (n, "yes" if power_conjugacy_criterion(p, l, m, n) else "no")
        for n in ns
    )
    print("  <%d,%d> over F_%d:  %s" % (l, m, p, verdicts))

# confirm one positive answer with an explicit witness
p = 3
chi = parse_character_literal("1:1,4:3", p)
found, w = power_conjugacy_oracle(chi, 4)
print()
print("chi = %s, n = 4" % format_character_literal(chi))
print("oracle: %s, witness %s" % (found, w.to_text()))
assert found
assert char_act(w.element, chi) == scalar_mul(4, chi)

# and one negative answer: n = 2 is not 1 mod 3
found, w = power_conjugacy_oracle(chi, 2)
print("chi = %s, n = 2" % format_character_literal(chi))
print("oracle: %s, witness %s" % (found, w))
assert not found and w is None

# the exceptional family: p = 2, m = 2l refuses even n = 3 = 1 mod 2
chi = next(iter(enumerate_characters(2, 3, 6)))
found, w = power_conjugacy_oracle(chi, 3)
print()
print("exceptional family <3,6> over F_2, chi = %s, n = 3"
      % format_character_literal(chi))
print("criterion says", power_conjugacy_criterion(2, 3, 6, 3))
print("oracle says   ", found)
assert not found

# one step off the exceptional family the answer flips back
chi = next(iter(enumerate_characters(2, 3, 7)))
found, w = power_conjugacy_oracle(chi, 3)
print()
print("type <3,7> over F_2, chi = %s, n = 3" % format_character_literal(chi))
print("oracle: %s, witness %s" % (found, w.to_text()))
assert found == power_conjugacy_criterion(2, 3, 7, 3) == True
