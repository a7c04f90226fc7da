"""Degree-12 and degree-120 records from elliptic 11-torsion.

The mod-11 representation attached to the weight-12 level-one cusp
form lives in the 11-torsion of the elliptic curve of conductor 11
(y^2 + y = x^3 - x^2 - 10x - 20), where a_p = tau(p) mod 11.  The
splitting-field polynomials are therefore products over torsion
points: complex-analytically, over points (i*w1 + j*w2)/11 of the
period lattice.

Conventions:
  * h = x-coordinate; a projective line L contributes the sum of x
    over its ten nonzero points.  Line sums feed the degree-12 record.
  * The full degree-120 record uses h = 11*x so that the product over
    all nonzero torsion points is monic with integer coefficients:
    prod (X - 11 x(P)) = (11^59 psi_11(X/11))^2 exactly, which is the
    division-polynomial identity the builder asserts.
  * Coefficient recognition is nearest-integer rounding gated at
    2^(-bits/4); on failure the builder doubles the precision, at
    most `retries` times.
  * All mpmath work runs at bits + 64 guard bits; a lattice is
    validated by recomputing g2, g3 from Eisenstein series of the
    reduced period ratio before any torsion point is evaluated.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf, mpc

from . import arith
from .errors import (
    AmbiguousOrder,
    BadPrime,
    CheckFailed,
    InvalidInput,
    RecognitionFailure,
)
from .frobenius import charpol_consistency
from .poly import IntPolynomial, convolve
from .records import GaloisPolyRecord

_GUARD = 64


@dataclass(frozen=True)
class EllipticCurveQ:
    """Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.disc == 0:
            raise InvalidInput("singular Weierstrass equation")

    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self):
        return (
            self.a1 * self.a1 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3 * self.a3
            - self.a4 * self.a4
        )

    @property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def disc(self):
        return (self.c4 ** 3 - self.c6 ** 2) // 1728

    @property
    def g2(self) -> Fraction:
        return Fraction(self.c4, 12)

    @property
    def g3(self) -> Fraction:
        return Fraction(self.c6, 216)


CURVE_X0_11 = EllipticCurveQ(0, -1, 1, -10, -20)


@dataclass(frozen=True)
class ComplexLattice:
    """Period lattice Z w1 + Z w2 of a curve, Gauss-reduced so that
    |w1| <= |w2| and tau = w2/w1 is in the upper half plane."""

    curve: EllipticCurveQ
    omega1: object
    omega2: object
    tau: object
    bits: int


# ----------------------------------------------------------------- periods

def _agm(a, b, maxiter):
    """Complex AGM with the branch choice |a-b| <= |a+b| each step."""
    eps = mp.ldexp(1, -(mp.prec - 8))
    for _ in range(maxiter):
        if mp.fabs(a - b) <= eps * mp.fabs(a):
            return (a + b) / 2
        a, b = (a + b) / 2, mp.sqrt(a * b)
        if mp.fabs(a - b) > mp.fabs(a + b):
            b = -b
    raise RecognitionFailure("AGM did not converge")


def _gauss_reduce(w1, w2):
    for _ in range(10000):
        if mp.fabs(w1) > mp.fabs(w2):
            w1, w2 = w2, w1
        n = mp.nint(mp.re(w2 / w1))
        w2 = w2 - n * w1
        if mp.fabs(w2) >= mp.fabs(w1):
            break
    else:
        raise RecognitionFailure("lattice reduction did not terminate")
    if mp.im(w2 / w1) < 0:
        w2 = -w2
    return w1, w2


def _eisenstein_g2_g3(w1, tau):
    """g2, g3 of the lattice w1 (Z + Z tau) by E4/E6 q-series."""
    q = mp.exp(2j * mp.pi * tau)
    eps = mp.ldexp(1, -(mp.prec - 8))
    e4 = mp.mpf(1)
    e6 = mp.mpf(1)
    qn = q
    for n in range(1, 4 * mp.prec):
        t = qn / (1 - qn)
        e4 += 240 * n ** 3 * t
        e6 -= 504 * n ** 5 * t
        qn *= q
        if mp.fabs(t) < eps:
            break
    else:
        raise RecognitionFailure("Eisenstein series did not converge")
    scale = (2 * mp.pi / w1) ** 2
    return scale ** 2 * e4 / 12, scale ** 3 * e6 / 216


def agm_periods(E: EllipticCurveQ, bits: int) -> ComplexLattice:
    """Fundamental periods of E at `bits` precision via the AGM.

    The returned basis is Gauss-reduced with Im(tau) > 0 and is
    validated by recomputing (g2, g3) from Eisenstein series; a
    mismatch beyond 2^(-bits/2) raises RecognitionFailure.
    """
    if bits < 128:
        raise InvalidInput("need at least 128 bits")
    with mp.workprec(bits + _GUARD):
        g2 = mpf(E.g2.numerator) / E.g2.denominator
        g3 = mpf(E.g3.numerator) / E.g3.denominator
        roots = mp.polyroots([4, 0, -g2, -g3], maxsteps=200, extraprec=64)
        e1, e2, e3 = sorted(
            roots, key=lambda r: (-mp.re(r), -mp.im(r))
        )
        a = mp.sqrt(e1 - e3)
        b = mp.sqrt(e1 - e2)
        c = mp.sqrt(e2 - e3)
        w1 = mp.pi / _agm(a, b, 4 * bits)
        w2 = 1j * mp.pi / _agm(a, c, 4 * bits)
        tol = mp.ldexp(1, -(bits // 2))
        for cand in (w2, w2 + w1, w2 - w1, -w2 + w1, -w2 - w1, 2 * w2):
            v1, v2 = _gauss_reduce(w1, cand)
            tau = v2 / v1
            try:
                h2, h3 = _eisenstein_g2_g3(v1, tau)
            except RecognitionFailure:
                continue
            err = mp.fabs(h2 - g2) / mp.fabs(g2) + mp.fabs(h3 - g3) / mp.fabs(g3)
            if err < tol:
                return ComplexLattice(E, v1, v2, tau, bits)
    raise RecognitionFailure("period lattice failed the g2/g3 validation")


# ------------------------------------------------------------ Weierstrass P

def _wp_coeffs(g2, g3, count):
    """Laurent coefficients c_k of P(z) = z^-2 + sum c_k z^(2k-2)."""
    c = [None, None, g2 / 20, g3 / 28]
    for k in range(4, count + 1):
        s = sum(c[m] * c[k - m] for m in range(2, k - 1))
        c.append(3 * s / ((2 * k + 1) * (k - 3)))
    return c


def _reduce_mod_lattice(z, w1, w2):
    x1, y1 = mp.re(w1), mp.im(w1)
    x2, y2 = mp.re(w2), mp.im(w2)
    det = x1 * y2 - y1 * x2
    a = (mp.re(z) * y2 - mp.im(z) * x2) / det
    b = (x1 * mp.im(z) - y1 * mp.re(z)) / det
    return z - mp.nint(a) * w1 - mp.nint(b) * w2


def _wp(z, lattice_data):
    """P(z) by lattice reduction, halving into the series disk, the
    truncated Laurent series, then x-only duplication steps."""
    w1, w2, g2, g3, coeffs, rmin = lattice_data
    z = _reduce_mod_lattice(z, w1, w2)
    if mp.fabs(z) == 0:
        raise InvalidInput("P has a pole at lattice points")
    halvings = 0
    while mp.fabs(z) > rmin / 4:
        z = z / 2
        halvings += 1
        if halvings > 8:
            raise RecognitionFailure("argument reduction stalled")
    z2 = z * z
    acc = mp.mpc(0)
    zp = z2
    for k in range(2, len(coeffs)):
        acc += coeffs[k] * zp
        zp *= z2
    w = 1 / z2 + acc
    for _ in range(halvings):
        num = (6 * w * w - g2 / 2) ** 2
        den = 4 * (4 * w ** 3 - g2 * w - g3)
        w = num / den - 2 * w
    return w


# -------------------------------------------------------------- torsion grid

def _canonical_points(ell):
    """One representative per {P, -P} pair, lexicographically least."""
    out = []
    for i in range(ell):
        for j in range(ell):
            if (i, j) == (0, 0):
                continue
            if (i, j) <= ((-i) % ell, (-j) % ell):
                out.append((i, j))
    return out


@dataclass(frozen=True)
class TorsionGrid:
    """Curve x-coordinates of the nonzero ell-torsion, indexed by the
    lattice coordinates (i, j) of (i w1 + j w2)/ell.  Mirrored pairs
    (i, j) and (-i, -j) share one value (P is even)."""

    ell: int
    bits: int
    x: dict

    def canonical_points(self):
        return _canonical_points(self.ell)


def torsion_x_table(lattice: ComplexLattice, ell: int = 11,
                    bits: int | None = None) -> TorsionGrid:
    """x-coordinates of all nonzero ell-torsion points of the curve.

    Values are P((i w1 + j w2)/ell) - b2/12 at the lattice's working
    precision; the lattice must carry at least 256 bits.
    """
    if lattice.bits < 256:
        raise InvalidInput("need a lattice at >= 256 bits")
    if bits is None:
        bits = lattice.bits
    E = lattice.curve
    with mp.workprec(bits + _GUARD):
        g2 = mpf(E.g2.numerator) / E.g2.denominator
        g3 = mpf(E.g3.numerator) / E.g3.denominator
        w1, w2 = lattice.omega1, lattice.omega2
        coeffs = _wp_coeffs(g2, g3, bits // 4 + 48)
        data = (w1, w2, g2, g3, coeffs, mp.fabs(w1))
        shift = mpf(E.b2) / 12
        x = {}
        for i, j in _canonical_points(ell):
            z = (i * w1 + j * w2) / ell
            v = _wp(z, data) - shift
            x[(i, j)] = v
            x[((-i) % ell, (-j) % ell)] = v
    return TorsionGrid(ell, bits, x)


# ------------------------------------------------------- division polynomial

def _zmul(a, b):
    return convolve(list(a), list(b))


def _zsub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def division_poly_part(E: EllipticCurveQ, n: int) -> IntPolynomial:
    """The x-only part f_n of the n-division polynomial: psi_n = f_n
    for odd n and psi_n = psi_2 f_n for even n, with psi_2^2 =
    4x^3 + b2 x^2 + 2 b4 x + b6.  Roots of f_n (n odd, n > 1) are the
    x-coordinates of the nonzero n-torsion killed by no smaller odd
    divisor pattern; deg f_n = (n^2 - 1)/2 with leading coefficient n
    for odd n."""
    if n < 1:
        raise InvalidInput("n must be positive")
    b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
    Q = [b6, 2 * b4, b2, 4]
    Q2 = _zmul(Q, Q)
    f = {
        0: [0],
        1: [1],
        2: [1],
        3: [b8, 3 * b6, 3 * b4, b2, 3],
        4: [
            b4 * b8 - b6 * b6,
            b2 * b8 - b4 * b6,
            10 * b8,
            10 * b6,
            5 * b4,
            b2,
            2,
        ],
    }

    def get(m):
        if m not in f:
            if m % 2:
                r = (m - 1) // 2
                t1 = _zmul(get(r + 2), _zmul(get(r), _zmul(get(r), get(r))))
                c = _zmul(get(r + 1), _zmul(get(r + 1), get(r + 1)))
                t2 = _zmul(get(r - 1), c)
                if r % 2 == 0:
                    f[m] = _zsub(_zmul(Q2, t1), t2)
                else:
                    f[m] = _zsub(t1, _zmul(Q2, t2))
            else:
                r = m // 2
                t1 = _zmul(get(r + 2), _zmul(get(r - 1), get(r - 1)))
                t2 = _zmul(get(r - 2), _zmul(get(r + 1), get(r + 1)))
                f[m] = _zmul(get(r), _zsub(t1, t2))
        return f[m]

    return IntPolynomial(get(n))


# ------------------------------------------------------------------ builders

def _recognize_integers(values, bits):
    """Round complex coefficients to integers, gated at 2^(-bits/4)."""
    gate = mp.ldexp(1, -(bits // 4))
    out = []
    worst = mp.mpf(0)
    for v in values:
        n = int(mp.nint(mp.re(v)))
        resid = mp.fabs(v - n)
        worst = max(worst, resid)
        if resid > gate:
            raise RecognitionFailure(
                f"coefficient residual {mp.nstr(resid, 8)} exceeds the "
                f"2^-{bits // 4} recognition gate"
            )
        out.append(n)
    return out, worst


def _poly_from_roots(roots):
    poly = [mp.mpc(1)]
    for r in roots:
        nxt = [mp.mpc(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] -= c * r
            nxt[i + 1] += c
        poly = nxt
    return poly  # constant first


def _lines(ell):
    """The ell+1 lines of P^1(F_ell) as lists of nonzero points."""
    lines = []
    for j in range(ell):
        lines.append([(m % ell, m * j % ell) for m in range(1, ell)])
    lines.append([(0, m) for m in range(1, ell)])
    return lines


def build_projective_poly(E: EllipticCurveQ, ell: int = 11,
                          bits: int = 300, retries: int = 2) -> GaloisPolyRecord:
    """Degree-(ell+1) projective record from line sums of torsion x.

    For each of the ell+1 lines L of the torsion plane, s_L is the sum
    of x over the ell-1 nonzero points of L; the record polynomial is
    prod (X - s_L), recognized to integers.  RecognitionFailure doubles
    the precision up to `retries` times; the finished record must pass
    charpol_consistency to p <= 200 (weight-12 traces mod ell) before
    it is returned."""
    b = bits
    last = None
    for _ in range(retries + 1):
        try:
            lattice = agm_periods(E, b)
            grid = torsion_x_table(lattice, ell, b)
            with mp.workprec(b + _GUARD):
                sums = [
                    sum(grid.x[pt] for pt in line) for line in _lines(ell)
                ]
                coeffs, _ = _recognize_integers(_poly_from_roots(sums), b)
            # source is precision-independent so that rebuilding at a
            # different bit count round-trips to an identical file
            record = GaloisPolyRecord(
                12, ell, "projective", tuple(coeffs),
                source="elliptic 11-torsion line sums",
            )
            result = charpol_consistency(record, 200)
            if not result.ok:
                raise CheckFailed(f"built record fails validation: {result}")
            return record
        except RecognitionFailure as exc:
            last = exc
            b *= 2
    raise RecognitionFailure(
        f"no integer recognition up to {b // 2} bits: {last}"
    )


def build_full_poly(E: EllipticCurveQ, ell: int = 11,
                    bits: int = 300, retries: int = 2) -> GaloisPolyRecord:
    """Degree-(ell^2 - 1) full record: prod over nonzero torsion P of
    (X - ell*x(P)).  The scaling by ell makes the product monic and
    integral; the recognized degree-60 half is asserted equal to
    ell^59 psi_ell(X/ell) from the exact division polynomial, and the
    record is its square."""
    b = bits
    last = None
    half = division_poly_part(E, ell)
    n = half.degree
    if half.lc != ell:
        raise CheckFailed("division polynomial does not have leading "
                          "coefficient ell")
    expected = [
        int(c) * ell ** (n - 1 - d) for d, c in enumerate(half.coeffs[:-1])
    ] + [1]
    for _ in range(retries + 1):
        try:
            lattice = agm_periods(E, b)
            grid = torsion_x_table(lattice, ell, b)
            with mp.workprec(b + _GUARD):
                roots = [ell * grid.x[pt] for pt in grid.canonical_points()]
                coeffs, _ = _recognize_integers(_poly_from_roots(roots), b)
            if coeffs != expected:
                raise CheckFailed(
                    "recognized half-polynomial differs from the exact "
                    "division-polynomial scaling"
                )
            square = convolve(coeffs, coeffs)
            return GaloisPolyRecord(
                12, ell, "full", tuple(square),
                source="elliptic 11-torsion, h = ell*x",
            )
        except RecognitionFailure as exc:
            last = exc
            b *= 2
    raise RecognitionFailure(
        f"no integer recognition up to {b // 2} bits: {last}"
    )


# ------------------------------------------------------------- point counts

def _ap_charsum(E: EllipticCurveQ, p: int) -> int:
    if p == 2:
        count = 1
        for x in range(2):
            for y in range(2):
                lhs = y * y + E.a1 * x * y + E.a3 * y
                rhs = x ** 3 + E.a2 * x * x + E.a4 * x + E.a6
                if (lhs - rhs) % 2 == 0:
                    count += 1
        return 2 + 1 - count
    s = 0
    for x in range(p):
        q = ((4 * x + E.b2) * x + 2 * E.b4) * x + E.b6
        s += arith.jacobi(q % p, p)
    return -s


def _short_weierstrass(E: EllipticCurveQ, p: int):
    # Y^2 = X^3 + A X + B, valid for p > 3
    return (-27 * E.c4) % p, (-54 * E.c6) % p


def _ec_add(P, Q, A, p):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + A) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p


def _ec_mul(n, P, A, p):
    if n < 0:
        n, P = -n, (P[0], (-P[1]) % p)
    R = None
    while n:
        if n & 1:
            R = _ec_add(R, P, A, p)
        P = _ec_add(P, P, A, p)
        n >>= 1
    return R


def _random_point(A, B, p, rng):
    while True:
        x = rng.randrange(p)
        t = (x * x * x + A * x + B) % p
        if t == 0:
            return x, 0
        if arith.jacobi(t, p) == 1:
            return x, arith.sqrt_mod(t, p)


def _order_multiples_in(P, lo, hi, A, p):
    """All n in [lo, hi] with n*P = O, by giant steps over a baby table."""
    width = hi - lo + 1
    m = arith.isqrt(width) + 1
    baby = {}
    Q = None
    for j in range(m):
        if Q is None and j > 0:
            # point order divides j: multiples of the detected order
            r = j
            first = lo + (-lo) % r
            return set(range(first, hi + 1, r))
        if Q is not None:
            baby.setdefault(Q, []).append(j)
        Q = _ec_add(Q, P, A, p)
    step = _ec_mul(m, P, A, p)
    out = set()
    R = _ec_mul(lo, P, A, p)
    i = 0
    while lo + i * m <= hi + m:
        if R is None:
            n = lo + i * m
            if lo <= n <= hi:
                out.add(n)
        else:
            x, y = R
            for j in baby.get((x, y), ()):
                n = lo + i * m - j
                if lo <= n <= hi:
                    out.add(n)
            for j in baby.get((x, (-y) % p), ()):
                n = lo + i * m + j
                if lo <= n <= hi:
                    out.add(n)
        R = _ec_add(R, step, A, p)
        i += 1
    return out


def ap_via_bsgs(E: EllipticCurveQ, p: int) -> int:
    """Trace of Frobenius a_p by group-order search in the Hasse window.

    Small p (< 1000) are counted by a character sum.  Otherwise random
    points vote: each point's admissible orders inside the window are
    intersected until a single group order remains; the known rational
    5-torsion restricts candidates to multiples of 5.  AmbiguousOrder
    is raised if eight points leave more than one candidate."""
    if not arith.is_prime(p):
        raise BadPrime(f"{p} is not prime")
    if E.disc % p == 0:
        raise BadPrime(f"bad reduction at {p}")
    if p > 10 ** 24:
        raise InvalidInput("p beyond the supported range")
    if p < 1000:
        return _ap_charsum(E, p)
    A, B = _short_weierstrass(E, p)
    s = arith.isqrt(4 * p)
    lo, hi = p + 1 - s, p + 1 + s
    rng = random.Random(p)
    candidates = None
    for _ in range(8):
        P = _random_point(A, B, p, rng)
        P5 = _ec_mul(5, P, A, p)
        if P5 is None:
            continue
        lo5 = lo // 5 + (1 if lo % 5 else 0)
        hits = _order_multiples_in(P5, lo5, hi // 5, A, p)
        found = {5 * n for n in hits}
        candidates = found if candidates is None else candidates & found
        if candidates is not None and len(candidates) == 1:
            return p + 1 - candidates.pop()
    raise AmbiguousOrder(
        f"group order not unique in the Hasse window at p={p}: "
        f"{sorted(candidates or ())}"
    )
