"""
Rebuilding the mod-11 polynomial from elliptic 11-torsion
=========================================================

For ell = 11 the representation attached to Delta lives in the
Jacobian of a genus-one modular curve, i.e. in an elliptic curve
y^2 + y = x^3 - x^2 - 10x - 20 over Q.  That makes the polynomial
computable from scratch with floating-point analysis alone:

  1. compute the periods of the curve by the AGM,
  2. evaluate the Weierstrass p-function at the 11-torsion points,
  3. symmetrize over the 60 canonical points to get line sums,
  4. recognize the coefficients as integers.

The result is certified exactly (division polynomial, charpol checks
against the q-expansion of Delta), so the floats never have to be
trusted.
"""

import time

from galrep.frobenius import charpol_consistency
from galrep.genus1 import (
    CURVE_X0_11,
    agm_periods,
    ap_via_bsgs,
    build_full_poly,
    build_projective_poly,
    division_poly_part,
)
from galrep.poly import convolve
from galrep.qexp import cusp_form_level1

E = CURVE_X0_11
print("curve: y^2 + y = x^3 - x^2 - 10x - 20")
print(f"discriminant = {E.disc} = -(11^5), c4 = {E.c4}")

lat = agm_periods(E, 320)
print(f"\nreal period  omega1 = {lat.omega1}")
print(f"lattice ratio   tau = {lat.tau}")

t0 = time.time()
record = build_projective_poly(E, bits=300)
print(f"\nprojective record {record.record_id} "
      f"(degree {record.polynomial.degree}, {time.time() - t0:.1f}s):")
for i, c in enumerate(record.polynomial.coeffs):
    if c:
        print(f"  x^{i}: {c}")

# Exact certification, no floats involved.
r = charpol_consistency(record, 200)
print(f"\ncharpol consistency vs Delta for p < 200: "
      f"{'ok' if r.ok else 'FAILED'} ({r.checked} primes)")

# The full degree-120 polynomial factors as predicted by the two
# halves of the x-coordinate orbit structure.
full = build_full_poly(E, bits=300)
psi = division_poly_part(E, 11)
n = psi.degree
lifted = [int(c) * 11 ** (n - 1 - d)
          for d, c in enumerate(psi.coeffs[:-1])] + [1]
assert list(full.polynomial.coeffs) == convolve(lifted, lifted)
print(f"full record {full.record_id} (degree {full.polynomial.degree}): "
      "equals the square of the scaled division polynomial")

# tau(p) mod 11 is just a_p of this curve; count points both ways.
delta = cusp_form_level1(12, 200)
print("\ntau(p) = a_p(E) mod 11 (baby-step/giant-step point counts):")
for p in (13, 101, 10 ** 12 + 39):
    ap = ap_via_bsgs(E, p)
    line = f"  p = {p}: a_p = {ap}"
    if p < 200:
        line += f", tau(p) mod 11 = {delta.a(p) % 11}, a_p mod 11 = {ap % 11}"
        assert delta.a(p) % 11 == ap % 11
    print(line)
