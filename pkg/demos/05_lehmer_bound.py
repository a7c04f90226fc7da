"""
Hunting for tau(p) = 0: the sieve and the nonvanishing bound
============================================================

If tau(n) ever vanishes, the least such n is a prime p, and that p is
pinned down by classical congruences:

    p = -1 mod 2^11 * 3^7 * 5^3 * 691,
    p in {-1, 19, 31} mod 7^2,
    p a non-square mod 23.

Together these confine p to 33 residue classes modulo ~4.36 * 10^14,
so candidates are astronomically sparse.  Each surviving prime is then
fed to mod-ell zero detectors (the certified polynomial records, plus
an elliptic-curve point count for ell = 11): if tau(p) is nonzero mod
any one ell, tau(p) != 0.  Running detectors for ell in {11, 31} over
the whole range establishes an unconditional nonvanishing bound.
"""

from galrep.arith import is_prime_strict
from galrep.lehmer import (
    DEFAULT_SIEVE,
    default_detectors,
    nonvanishing_bound,
    search,
    serre_candidates,
    verify_candidate,
)

spec = DEFAULT_SIEVE
print(f"combined modulus: {spec.combined_modulus} "
      f"({len(spec.residue_classes())} residue classes)")

print("\nfirst few primes surviving the congruence sieve:")
for i, p in enumerate(serre_candidates(0, 10 ** 16)):
    print(f"  {p}")
    if i >= 4:
        break

# Detectors: certified mod-31 record, rebuilt mod-11 record, and an
# independent point count on the genus-one curve (also mod 11).
detectors = default_detectors(ells=(11, 31), include_bsgs=True)
print(f"\ndetectors: {[(d.ell, d.method) for d in detectors]}")

print("\nleast candidate surviving the mod-31 detector alone:")
d31 = [d for d in detectors if d.ell == 31]
hit = search(0, 10 ** 16, d31, spec)
print(f"  {hit}  (tau = 0 mod 31, killed mod 11: "
      f"{verify_candidate(hit, detectors, spec).accepted is False})")

# The record holder: every detector in the kit reports trace = 0.
p_star = 982149821766199295999
cand = verify_candidate(p_star, detectors, spec)
print(f"\np* = {p_star}")
print(f"  congruences: {cand.conditions}")
print(f"  strict primality recheck: {is_prime_strict(p_star)}")
for ell, method, result in cand.detector_results:
    print(f"  ell = {ell:>2} ({method}): trace zero = {result}")
print(f"  accepted: {cand.accepted}")

# A bound statement needs ALL of ell in {11, 13, 17, 19, 31}: anything
# less would not contradict a smaller vanishing prime.
try:
    nonvanishing_bound(p_star, detectors)
except Exception as e:
    print(f"\nwith detectors for 11 and 31 only: {e}")

# With records for 13, 17 and 19 installed (see README) the full
# five-detector search over [0, p* + 1) yields:
bound = nonvanishing_bound(p_star, [11, 13, 17, 19, 31])
print()
print(bound.text())
