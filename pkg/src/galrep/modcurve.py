"""Dimension bookkeeping for prime-level modular curves, and the
catalog of PGL2(F_l) cycle types on the projective line.

Characters mod l are powers omega^e of the Teichmueller/cyclotomic
character, identified by the exponent e modulo l-1; only even e occur
here.  Weight-2 cusp form dimensions for Gamma_0(l) with character
come from the standard trace-formula specialization at prime level,
reduced to exact rational arithmetic: the elliptic-point terms only
involve character values at square roots of -1 and primitive cube
roots, which are constrained to be {+-1} resp. cube roots of unity,
so no cyclotomic arithmetic is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import arith
from .errors import GalrepError, InvalidInput
from .poly import DegreePattern


class InconsistentPattern(GalrepError):
    """A factorization pattern matches no PGL2(F_l) cycle type."""


@dataclass(frozen=True)
class SubgroupSpec:
    """The subgroup H = ker(omega^(k-2)) of (Z/l)*, and the index
    data of the intermediate congruence group it cuts out between
    Gamma_1(l) and Gamma_0(l)."""

    ell: int
    weight: int
    generator: int          # generates H as a subgroup of (Z/l)*
    order: int              # |H| = gcd(k-2, l-1)
    index_over_gamma1: int  # = |H| / 2 (as groups of matrices mod +-1)
    is_gamma0: bool


def gamma_H(k: int, ell: int) -> SubgroupSpec:
    """Subgroup data for the fixed group of omega^(k-2)."""
    if k % 2 != 0 or k < 4:
        raise InvalidInput(f"weight must be even and >= 4, got {k}")
    if not arith.is_prime(ell) or ell < k - 1:
        raise InvalidInput(f"level must be a prime >= k-1, got {ell}")
    g = gcd(k - 2, ell - 1)
    g0 = arith.primitive_root(ell)
    gen = pow(g0, (ell - 1) // g, ell)
    return SubgroupSpec(
        ell=ell,
        weight=k,
        generator=gen,
        order=g,
        index_over_gamma1=g // 2,
        is_gamma0=(g == ell - 1),
    )


def genus_X1(ell: int) -> int:
    """Genus of X_1(l) for prime l >= 5: (l-5)(l-7)/24."""
    if not arith.is_prime(ell) or ell < 5:
        raise InvalidInput(f"need a prime >= 5, got {ell}")
    num = (ell - 5) * (ell - 7)
    if num % 24:
        raise ArithmeticError("genus formula not integral")
    return num // 24


def genus_X0(ell: int) -> int:
    """Genus of X_0(l) for prime l >= 5."""
    if not arith.is_prime(ell) or ell < 5:
        raise InvalidInput(f"need a prime >= 5, got {ell}")
    nu2 = 1 + arith.jacobi(-1, ell)
    nu3 = 1 + arith.jacobi(-3, ell)
    g = 1 + Fraction(ell + 1, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - 1
    if g.denominator != 1:
        raise ArithmeticError("genus formula not integral")
    return int(g)


def dim_S2_eps(ell: int, e: int) -> int:
    """dim S_2(Gamma_0(l), omega^e) for prime l >= 5 and even e.

    e = 0 gives the genus of X_0(l).  For nontrivial even e the
    formula is (l+1)/12 - 1 - S4/4 - S3/3 with S4 the character sum
    over square roots of -1 (in {+-2} when l = 1 mod 4, else 0) and
    S3 over primitive cube roots (2 or -1 when l = 1 mod 3, else 0).
    """
    if not arith.is_prime(ell) or ell < 5:
        raise InvalidInput(f"need a prime >= 5, got {ell}")
    e %= ell - 1
    if e % 2:
        raise InvalidInput(f"character exponent must be even, got {e}")
    if e == 0:
        return genus_X0(ell)
    s4 = 0
    if ell % 4 == 1:
        x4 = arith.sqrt_mod(ell - 1, ell)
        s4 = 2 if pow(x4, e, ell) == 1 else -2
    s3 = 0
    if ell % 3 == 1:
        g0 = arith.primitive_root(ell)
        x3 = pow(g0, (ell - 1) // 3, ell)
        s3 = 2 if pow(x3, e, ell) == 1 else -1
    d = Fraction(ell + 1, 12) - 1 - Fraction(s4, 4) - Fraction(s3, 3)
    if d.denominator != 1 or d < 0:
        raise ArithmeticError(f"dimension formula not integral: {d}")
    return int(d)


def dim_J_gammaH(k: int, ell: int) -> int:
    """dim of the abelian variety attached to the intermediate group:
    the sum of dim S_2(l, omega^e) over the character group generated
    by omega^(k-2)."""
    spec = gamma_H(k, ell)
    g = spec.order
    # Characters trivial on H = ker(omega^(k-2)) are omega^e with
    # g | e; equivalently the subgroup of exponents generated by k-2.
    exps = [j * g for j in range((ell - 1) // g)]
    return sum(dim_S2_eps(ell, e) for e in exps)


@dataclass(frozen=True)
class CycleType:
    pattern: DegreePattern
    order: int
    kind: str  # identity | unipotent | split | nonsplit


class CycleTypeCatalog:
    """All cycle types of PGL2(F_l) acting on P^1(F_l), keyed by the
    multiset of cycle lengths (= factor degree pattern of a Frobenius
    polynomial).  The key map is injective, which is what lets a
    factorization pattern determine (projective order, kind)."""

    def __init__(self, ell: int):
        if not arith.is_prime(ell) or ell < 3:
            raise InvalidInput(f"need an odd prime, got {ell}")
        self.ell = ell
        classes = [
            CycleType(DegreePattern([1] * (ell + 1)), 1, "identity"),
            CycleType(DegreePattern([1, ell]), ell, "unipotent"),
        ]
        for d in range(2, ell):
            if (ell - 1) % d == 0:
                classes.append(
                    CycleType(
                        DegreePattern([1, 1] + [d] * ((ell - 1) // d)),
                        d,
                        "split",
                    )
                )
        for d in range(2, ell + 2):
            if (ell + 1) % d == 0:
                classes.append(
                    CycleType(DegreePattern([d] * ((ell + 1) // d)), d, "nonsplit")
                )
        self.classes = tuple(classes)
        self._by_pattern = {c.pattern: c for c in classes}
        if len(self._by_pattern) != len(classes):
            raise ArithmeticError(f"cycle-type catalog not injective at {ell}")

    def lookup(self, pattern: DegreePattern) -> CycleType:
        if pattern.degree != self.ell + 1:
            raise InconsistentPattern(
                f"pattern degree {pattern.degree} != {self.ell + 1}"
            )
        c = self._by_pattern.get(pattern)
        if c is None:
            raise InconsistentPattern(
                f"{pattern!r} is not a PGL2(F_{self.ell}) cycle type"
            )
        return c


_catalog_cache: dict[int, CycleTypeCatalog] = {}


def pgl2_cycle_types(ell: int) -> CycleTypeCatalog:
    if ell not in _catalog_cache:
        _catalog_cache[ell] = CycleTypeCatalog(ell)
    return _catalog_cache[ell]


def projective_order_from_pattern(
    pattern: DegreePattern, ell: int
) -> tuple[int, str]:
    """(order, kind) of a projective Frobenius with this cycle type."""
    c = pgl2_cycle_types(ell).lookup(pattern)
    return c.order, c.kind
