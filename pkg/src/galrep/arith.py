"""Exact integer arithmetic helpers.

Conventions: primality is decided by sympy (deterministic below 2^64,
BPSW above); callers that act on a "prime found" event can demand a
second opinion from an independent strong-probable-prime battery.
Residues are normalized to [0, m).  All functions take and return
plain Python ints (gmpy2 is used internally for speed).
"""

from __future__ import annotations

import gmpy2
import sympy


def is_prime(n: int) -> bool:
    """Primality test: deterministic below 2^64, BPSW above."""
    if n < 2:
        return False
    return bool(sympy.isprime(n))


# Bases for the redundant check, disjoint from sympy's MR bases (2,
# 3, 5, ... small primes) so the two tests do not share a pseudoprime
# failure mode.
_STRICT_BASES = (1662803, 9780504, 15239131, 52352297, 9007199254740997)


def is_prime_strict(n: int) -> bool:
    """Second-opinion primality: independent strong-PRP bases plus a
    strong Lucas test.  Use on hits that matter (sieve candidates)."""
    if n < 2:
        return False
    m = gmpy2.mpz(n)
    for p in (2, 3, 5, 7, 11, 13):
        if m == p:
            return True
        if m % p == 0:
            return False
    for a in _STRICT_BASES:
        if not gmpy2.is_strong_prp(m, a % m if a % m > 1 else a):
            return False
    return bool(gmpy2.is_strong_selfridge_prp(m))


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n); n must be odd and >= 3."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"jacobi: modulus must be odd and >= 3, got {n}")
    return int(gmpy2.jacobi(a, n))


def sqrt_mod(a: int, p: int) -> int | None:
    """Square root of a modulo prime p (None if a is a non-residue).
    Tonelli-Shanks; returns the root in [0, p)."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if jacobi(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks for p = 1 mod 4.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while jacobi(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def mult_order(a: int, m: int) -> int:
    """Multiplicative order of a modulo m (gcd(a, m) must be 1)."""
    a %= m
    if gmpy2.gcd(a, m) != 1:
        raise ValueError(f"mult_order: {a} not invertible mod {m}")
    group = int(sympy.totient(m))
    order = group
    for q, e in sympy.factorint(group).items():
        for _ in range(e):
            if pow(a, order // q, m) == 1:
                order //= q
            else:
                break
    return order


def primitive_root(p: int) -> int:
    """Smallest generator of (Z/pZ)* for prime p."""
    if p == 2:
        return 1
    factors = list(sympy.factorint(p - 1))
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
        g += 1


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine r mod m1 and r mod m2 (coprime moduli) -> (r, m1*m2)."""
    g, u, _ = gmpy2.gcdext(m1, m2)
    if g != 1:
        raise ValueError("crt_pair: moduli not coprime")
    m = m1 * m2
    r = (r1 + (r2 - r1) * int(u) % m2 * m1) % m
    return r, m


def crt(residues, moduli) -> tuple[int, int]:
    """CRT over a list of pairwise coprime moduli -> (r, prod)."""
    r, m = 0, 1
    for ri, mi in zip(residues, moduli, strict=True):
        r, m = crt_pair(r, m, ri % mi, mi)
    return r, m


def primes_below(limit: int) -> list[int]:
    """All primes < limit via a byte sieve."""
    if limit <= 2:
        return []
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, gmpy2.isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i in range(limit) if sieve[i]]


def isqrt(n: int) -> int:
    return int(gmpy2.isqrt(n))


def is_perfect_square(n: int) -> bool:
    return n >= 0 and bool(gmpy2.is_square(n))


def parse_intexpr(text: str) -> int:
    """Parse big-integer command-line forms exactly.

    Accepts plain decimals ("4351"), powers with one optional offset
    ("10^1000+4351", "2^64-59"), and integral scientific notation
    ("1e16", "2.5e3").
    """
    s = text.strip().replace("_", "")
    if not s:
        raise ValueError("empty integer expression")
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    if "^" in s:
        base_s, rest = s.split("^", 1)
        off = 0
        for op in "+-":
            if op in rest:
                exp_s, off_s = rest.split(op, 1)
                off = int(off_s) * (1 if op == "+" else -1)
                rest = exp_s
                break
        return sign * (int(base_s) ** int(rest) + off)
    if "e" in s.lower():
        mant, exp_s = s.lower().split("e", 1)
        exp = int(exp_s)
        if "." in mant:
            whole, frac = mant.split(".", 1)
            exp -= len(frac)
            mant = whole + frac
        if exp < 0:
            raise ValueError(f"not an integer: {text}")
        return sign * int(mant) * 10**exp
    return sign * int(s)
