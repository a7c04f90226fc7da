"""Mod-l Galois representation toolkit.

Verifies splitting-field polynomials for the mod-l representations
attached to the level-one cusp forms of weights 12, 16, 20, 22, reads
Frobenius data (tau(p) mod l up to sign) off their factorization
patterns at very large p, rebuilds the weight-12 mod-11 polynomial
from the 11-torsion of an elliptic curve, and runs the congruence
sieve that yields an explicit non-vanishing bound for tau(p) = 0.
"""

__version__ = "0.1.0"
