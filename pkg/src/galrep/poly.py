"""Dense univariate polynomials over Z and Z/m.

Coefficient lists are CONSTANT TERM FIRST: coeffs[i] multiplies x^i.
IntPolynomial is immutable and canonical (no trailing zeros; the zero
polynomial has an empty tuple and degree -1).  Mod-m arithmetic works
on plain lists of gmpy2.mpz and deliberately supports composite m:
inversion failures surface as NonInvertibleLeading with the factor of
m that was found, which callers exploit as a free partial
factorization.

Resultants use a primitive pseudo-remainder sequence with an exact
rational correction factor, so every intermediate stays an integer of
subresultant size; discriminant signs are exact.  Sturm chains are
all-integer (primitive parts of signed pseudo-remainders).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

import gmpy2

from .errors import BadPrime, InvalidInput, NonInvertibleLeading

_MPZ = gmpy2.mpz


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def convolve(a, b, trunc: int | None = None) -> list[int]:
    """Exact integer convolution (series/polynomial product).

    Schoolbook for short inputs, Kronecker substitution (one big
    multiply, signed digits recovered with an offset) for long ones.
    trunc keeps only the first trunc coefficients.
    """
    if not a or not b:
        return []
    na, nb = len(a), len(b)
    out_len = na + nb - 1
    if trunc is not None:
        out_len = min(out_len, trunc)
    if na * nb <= 4096:
        out = [0] * out_len
        for i, ai in enumerate(a):
            if ai == 0 or i >= out_len:
                continue
            for j, bj in enumerate(b):
                if i + j >= out_len:
                    break
                out[i + j] += ai * bj
        return out
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    bound = ma * mb * min(na, nb) + 1
    width = ((bound.bit_length() + 2 + 7) // 8) * 8  # byte-aligned digits
    wbytes = width // 8
    pa = _pack_signed(a, wbytes)
    pb = _pack_signed(b, wbytes)
    n = int(_MPZ(pa) * _MPZ(pb))
    return _unpack_signed(n, wbytes, na + nb - 1)[:out_len]


def _pack_signed(coeffs, wbytes: int) -> int:
    """sum(c_i * 2^(8*wbytes*i)) built via two non-negative buffers."""
    pos = bytearray(wbytes * len(coeffs))
    neg = bytearray(wbytes * len(coeffs))
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i * wbytes : i * wbytes + wbytes] = c.to_bytes(wbytes, "little")
        elif c < 0:
            neg[i * wbytes : i * wbytes + wbytes] = (-c).to_bytes(wbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack_signed(n: int, wbytes: int, count: int) -> list[int]:
    """Recover signed digits c_i with |c_i| < 2^(width-1) from n."""
    width = 8 * wbytes
    half = 1 << (width - 1)
    # Adding half to every digit makes all digits non-negative with no
    # inter-digit carries, so a plain byte scan recovers them.
    offset = (half * ((1 << (width * count)) - 1)) // ((1 << width) - 1)
    m = n + offset
    if m < 0:
        raise ValueError("unpack: digit bound violated")
    raw = m.to_bytes(wbytes * count + 16, "little")
    out = []
    for i in range(count):
        d = int.from_bytes(raw[i * wbytes : (i + 1) * wbytes], "little")
        out.append(d - half)
    return out


class IntPolynomial:
    """Immutable integer polynomial, constant coefficient first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(int(x) for x in coeffs)
        _trim(c)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, *a):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise InvalidInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "IntPolynomial(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "IntPolynomial(" + " + ".join(terms[:6]) + (" + ..." if len(terms) > 6 else "") + ")"

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-x for x in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([other * x for x in self.coeffs])
        return IntPolynomial(convolve(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, mpz, mpmath types."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> int:
        if self.is_zero():
            return 0
        g = 0
        for c in self.coeffs:
            g = int_gcd(g, abs(c))
            if g == 1:
                break
        return g

    def primitive_part(self) -> "IntPolynomial":
        """Divide out the content, keeping the sign of the lc."""
        if self.is_zero():
            return self
        g = self.content()
        return IntPolynomial([c // g for c in self.coeffs])

    def scale_roots(self, c: int) -> "IntPolynomial":
        """P(x) -> c^deg * P(x/c): multiplies every root by c."""
        n = self.degree
        return IntPolynomial(
            [self.coeffs[i] * c ** (n - i) for i in range(n + 1)]
        )


def prem(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Pseudo-remainder: lc(b)^(da-db+1) * a mod b, all-integer."""
    da, db = a.degree, b.degree
    if db < 0:
        raise InvalidInput("pseudo-division by zero")
    if da < db:
        return a
    r = list(a.coeffs)
    lb = b.lc
    bc = b.coeffs
    for k in range(da - db, -1, -1):
        top = r[db + k]
        for i in range(db + k):
            r[i] *= lb
        for i in range(db):
            r[i + k] -= top * bc[i]
        r[db + k] = 0
    return IntPolynomial(r[:db])


def resultant(a: IntPolynomial, b: IntPolynomial) -> int:
    """Resultant over Z via a primitive PRS with exact corrections."""
    if a.is_zero() or b.is_zero():
        return 0
    sign = 1
    if a.degree < b.degree:
        if (a.degree * b.degree) % 2 == 1:
            sign = -1
        a, b = b, a
    acc = Fraction(sign)
    while b.degree > 0:
        da, db, lb = a.degree, b.degree, b.lc
        r = prem(a, b)
        if r.is_zero():
            return 0
        cont = r.content()
        r = IntPolynomial([c // cont for c in r.coeffs])
        dr = r.degree
        exp = da - dr - (da - db + 1) * db
        s = -1 if ((da + dr) * db + dr * db) % 2 == 1 else 1
        acc *= Fraction(s * cont**db)
        if exp >= 0:
            acc *= Fraction(lb) ** exp
        else:
            acc /= Fraction(lb) ** (-exp)
        a, b = b, r
    acc *= Fraction(b.coeffs[0]) ** a.degree if a.degree >= 0 else 1
    if acc.denominator != 1:
        raise ArithmeticError("resultant: non-integral accumulator")
    return int(acc)


def poly_disc(p: IntPolynomial) -> int:
    """Discriminant: (-1)^(n(n-1)/2) * res(P, P') / lc(P)."""
    n = p.degree
    if n < 1:
        raise InvalidInput("discriminant needs degree >= 1")
    if n == 1:
        return 1
    res = resultant(p, p.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 == 1 else 1
    num = sign * res
    if num % p.lc != 0:
        raise ArithmeticError("discriminant: lc does not divide resultant")
    return num // p.lc


def gcd_over_z(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd in Z[x] (positive lc), via primitive PRS."""
    if a.is_zero():
        return b.primitive_part() if not b.is_zero() else b
    if b.is_zero():
        return a.primitive_part()
    a, b = a.primitive_part(), b.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero() and b.degree > 0:
        r = prem(a, b).primitive_part()
        a, b = b, r
    if not b.is_zero():
        return IntPolynomial([1])  # constant remainder: coprime
    return a if a.lc > 0 else -a


def divexact(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Exact division in Q[x], asserting the quotient is integral."""
    if b.is_zero():
        raise InvalidInput("division by zero polynomial")
    rem = [Fraction(c) for c in a.coeffs]
    db, lb = b.degree, Fraction(b.lc)
    q = [Fraction(0)] * max(a.degree - db + 1, 0)
    for k in range(a.degree - db, -1, -1):
        t = rem[db + k] / lb
        q[k] = t
        if t:
            for i in range(db + 1):
                rem[i + k] -= t * b.coeffs[i]
    if any(x != 0 for x in rem) or any(x.denominator != 1 for x in q):
        raise ArithmeticError("divexact: division not exact")
    return IntPolynomial([int(x) for x in q])


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """P / gcd(P, P'): same distinct roots, squarefree."""
    if p.degree < 1:
        raise InvalidInput("squarefree part needs degree >= 1")
    g = gcd_over_z(p, p.derivative())
    if g.degree == 0:
        return p.primitive_part()
    return divexact(p.primitive_part(), g)


def sturm_real_root_count(p: IntPolynomial) -> int:
    """Number of distinct real roots, by an all-integer Sturm chain.

    The input is reduced to its squarefree part first, so repeated
    roots are counted once.
    """
    if p.is_zero():
        raise InvalidInput("Sturm needs a nonzero polynomial")
    if p.degree == 0:
        return 0
    f = squarefree_part(p)
    if f.degree == 0:
        return 0
    chain = [f, f.derivative().primitive_part()]
    while chain[-1].degree > 0:
        a, b = chain[-2], chain[-1]
        r = prem(a, b)
        if r.is_zero():
            raise ArithmeticError("Sturm: chain collapsed on squarefree input")
        # prem scales (a mod b) by lc(b)^(delta+1); flip so the chain
        # element is a positive multiple of -(a mod b).
        if b.lc > 0 or (a.degree - b.degree + 1) % 2 == 0:
            r = -r
        chain.append(r.primitive_part())
    def variations(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for x, y in zip(signs, signs[1:]) if x * y < 0)
    at_pos = [1 if q.lc > 0 else -1 for q in chain]
    at_neg = [
        (1 if q.lc > 0 else -1) * (-1 if q.degree % 2 else 1) for q in chain
    ]
    return variations(at_neg) - variations(at_pos)


class DegreePattern:
    """Multiset of irreducible-factor degrees of a squarefree reduction."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        ps = tuple(sorted(int(x) for x in parts))
        if any(x < 1 for x in ps):
            raise InvalidInput("degree pattern parts must be positive")
        object.__setattr__(self, "parts", ps)

    def __setattr__(self, *a):
        raise AttributeError("DegreePattern is immutable")

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for x in self.parts:
            out[x] = out.get(x, 0) + 1
        return out

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        return isinstance(other, DegreePattern) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        inner = " ".join(
            f"{d}^{m}" if m > 1 else f"{d}" for d, m in sorted(self.counts().items())
        )
        return f"DegreePattern({inner})"


# ---------------------------------------------------------------------------
# Arithmetic in (Z/m)[x] on raw mpz lists (constant term first).
# m may be composite; inversion failures raise NonInvertibleLeading.


def _minv(c, m):
    try:
        return gmpy2.invert(c, m)
    except ZeroDivisionError:
        g = int(gmpy2.gcd(c, m))
        raise NonInvertibleLeading(g, int(m)) from None


def mod_reduce(p: IntPolynomial, m) -> list:
    m = _MPZ(m)
    return _trim([_MPZ(c) % m for c in p.coeffs])


def mod_monic(f: list, m) -> list:
    """Divide by the leading coefficient (must be invertible)."""
    if not f:
        raise InvalidInput("zero polynomial cannot be made monic")
    if f[-1] == 1:
        return list(f)
    inv = _minv(f[-1], m)
    return [c * inv % m for c in f]


def mod_mul(a: list, b: list, m) -> list:
    if not a or not b:
        return []
    out = [_MPZ(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % m for c in out])


def mod_rem(a: list, f: list, m) -> list:
    """a mod f, for f monic."""
    if not f:
        raise InvalidInput("reduction modulo zero polynomial")
    if f[-1] != 1:
        raise InvalidInput("mod_rem requires a monic modulus")
    r = list(a)
    n = len(f) - 1
    for k in range(len(r) - 1 - n, -1, -1):
        top = r[n + k] % m
        r[n + k] = _MPZ(0)
        if top:
            for i in range(n):
                if f[i]:
                    r[i + k] = (r[i + k] - top * f[i]) % m
    return _trim([c % m for c in r[: n]])


def mod_mulmod(a: list, b: list, f: list, m) -> list:
    return mod_rem(mod_mul(a, b, m), f, m)


def mod_pow_x(q, f: list, m) -> list:
    """x^q mod f (f monic), by square-and-multiply on the bits of q."""
    n = len(f) - 1
    if n <= 0:
        raise InvalidInput("modulus must have positive degree")
    q = int(q)
    if q < n:
        return [_MPZ(0)] * q + [_MPZ(1)]
    r = [_MPZ(0), _MPZ(1)]  # x
    for bit in bin(q)[3:]:
        r = mod_mulmod(r, r, f, m)
        if bit == "1":
            r = mod_rem([_MPZ(0)] + r, f, m)
    return r


def mod_compose(g: list, h: list, f: list, m) -> list:
    """g(h) mod f by Horner; one mod-f multiply per coefficient of g."""
    acc: list = []
    for c in reversed(g):
        acc = mod_mulmod(acc, h, f, m) if acc else []
        if c:
            if acc:
                acc[0] = (acc[0] + c) % m
            else:
                acc = [c % m]
            acc = _trim(acc)
    return acc


def mod_gcd(a: list, b: list, m) -> list:
    """Monic gcd; with composite m may raise NonInvertibleLeading."""
    a, b = _trim([c % m for c in a]), _trim([c % m for c in b])
    while b:
        b_monic = mod_monic(b, m)
        a, b = b_monic, mod_rem(a, b_monic, m)
    return a


def mod_divexact(a: list, b: list, m) -> list:
    """a / b when b | a (b made monic internally; checks zero remainder)."""
    bm = mod_monic(b, m)
    lead_inv = _minv(b[-1], m) if b[-1] != 1 else _MPZ(1)
    r = list(a)
    n = len(bm) - 1
    q = [_MPZ(0)] * (len(a) - n)
    for k in range(len(a) - 1 - n, -1, -1):
        top = r[n + k] % m
        q[k] = top
        r[n + k] = _MPZ(0)
        if top:
            for i in range(n):
                if bm[i]:
                    r[i + k] = (r[i + k] - top * bm[i]) % m
    if _trim([c % m for c in r]):
        raise ArithmeticError("mod_divexact: remainder nonzero")
    return _trim([c * lead_inv % m for c in q])


def ddf_pattern(p: IntPolynomial, q: int) -> DegreePattern:
    """Degrees of the irreducible factors of P modulo the prime q.

    Raises BadPrime when q divides the leading coefficient or P is
    not squarefree mod q (these are exactly the primes dividing
    lc * disc).  Distinct-degree factorization: the i-th Frobenius
    power x^(q^i) is maintained modulo the ORIGINAL reduction by
    modular composition, and factors of each degree are split off a
    shrinking cofactor by gcds.
    """
    m = _MPZ(q)
    if p.is_zero() or p.lc % q == 0:
        raise BadPrime(f"{q} divides the leading coefficient")
    f = mod_monic(mod_reduce(p, m), m)
    der = _trim([i * c % m for i, c in enumerate(f)][1:])
    g = mod_gcd(f, der, m)
    if len(g) - 1 > 0:
        raise BadPrime(f"not squarefree modulo {q}")
    n = len(f) - 1
    parts: list[int] = []
    cofactor = f
    frob = None  # x^(q^i) mod f
    frob1 = None
    i = 0
    while len(cofactor) - 1 >= 2 * (i + 1):
        i += 1
        if i == 1:
            frob1 = mod_pow_x(m, f, m)
            frob = frob1
        else:
            frob = mod_compose(frob, frob1, f, m)
        diff = list(frob)
        while len(diff) < 2:
            diff.append(_MPZ(0))
        diff[1] = (diff[1] - 1) % m
        h = mod_gcd(mod_rem(_trim(diff), mod_monic(cofactor, m), m), cofactor, m)
        dh = len(h) - 1
        if dh > 0:
            if dh % i:
                raise ArithmeticError("ddf: degree not a multiple of i")
            parts.extend([i] * (dh // i))
            cofactor = mod_divexact(cofactor, h, m)
    if len(cofactor) - 1 > 0:
        parts.append(len(cofactor) - 1)
    pat = DegreePattern(parts)
    if pat.degree != n:
        raise ArithmeticError("ddf: pattern degree mismatch")
    return pat


def mod_eval(f: list, x, m):
    acc = _MPZ(0)
    for c in reversed(f):
        acc = (acc * x + c) % m
    return acc
