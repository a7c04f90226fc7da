"""
Dimension bookkeeping for the level-one forms and their mod-ell curves
======================================================================

Walks through the numerology that pins down where each Galois
representation lives: dimensions of the relevant Jacobian pieces,
genus of the covering curve X_1(ell), and the cycle types of
PGL_2(F_ell) on the projective line that make a factorization
pattern a usable fingerprint.
"""

from math import gcd

from galrep.modcurve import dim_J_gammaH, genus_X1, pgl2_cycle_types

# The four (weight, ell) pairs with a certified polynomial record.
ROWS = [(12, 31), (16, 29), (20, 31), (22, 31)]

print("piece of J_1(ell) cut out by the character subgroup <w^(k-2)>")
print(f"{'k':>4} {'ell':>4} {'|<w^(k-2)>|':>12} {'dim':>5}")
for k, ell in ROWS:
    # omega^(k-2) generates a subgroup of order (ell-1)/gcd(k-2, ell-1)
    order = (ell - 1) // gcd(k - 2, ell - 1)
    print(f"{k:>4} {ell:>4} {order:>12} {dim_J_gammaH(k, ell):>5}")

print()
print("genus of X_1(ell) (the curve whose Jacobian carries the representation)")
for ell in (11, 29, 31):
    print(f"  ell = {ell:>2}: genus {genus_X1(ell)}")

# ell = 11 has genus one: that is why the weight-12 mod-11 polynomial can be
# rebuilt directly from the 11-torsion of a single elliptic curve (demo 04).

print()
print("PGL_2(F_ell) on P^1: cycle types of the conjugacy classes")
print("(the catalog a Frobenius factorization pattern is matched against)")
for ell in (11, 31):
    cat = pgl2_cycle_types(ell)
    print(f"  ell = {ell}: {len(cat.classes)} classes, key map injective")
    for c in cat.classes[:4]:
        print(f"    {c.kind:<9} order {c.order:>2}  pattern {c.pattern!r}")
    print("    ...")
