"""Reading traces mod ell off Frobenius factorization patterns.

For a record (k, ell, P) the splitting behaviour of P modulo a good
prime p is the cycle type of the projective Frobenius acting on
P^1(F_ell), and that cycle type determines the order n of the image in
PGL2(F_ell) together with its conjugacy kind (split / nonsplit Cartan,
unipotent, identity).  Writing t for the trace and d = p^(k-1) mod ell
for the determinant of the 2x2 Frobenius matrix, the eigenvalue ratio
zeta = alpha/beta has multiplicative order n and

    t^2 = d * (zeta + zeta^(-1) + 2),

so each admissible zeta of order n contributes a candidate pair {t, -t}.
This recovers a_p mod ell up to sign -- for weight 12 the values of
Ramanujan's tau function at primes far beyond any feasible direct
computation (the pattern of P mod p costs one x^p power modulo a
degree-(ell+1) polynomial, binary powering, even for 1000-digit p).

Conventions: determinants use the weight-(k-1) power of p with trivial
nebentypus; candidate sets are reported as unordered pairs {t, -t} with
the smaller residue as printed representative; the pair {0} (projective
order exactly 2) is the trace-zero case, decidable cheaply via
x^(p^2) = x (mod P, p) together with x^p != x.
"""

import math
from dataclasses import dataclass

from . import arith
from .errors import BadPrime, Unrealizable
from .modcurve import InconsistentPattern, projective_order_from_pattern
from .qexp import cusp_form_level1
from .poly import (
    DegreePattern,
    ddf_pattern,
    mod_compose,
    mod_gcd,
    mod_monic,
    mod_pow_x,
    mod_reduce,
)


@dataclass(frozen=True)
class TraceCandidateSet:
    """Residues t mod ell compatible with an observed projective order,
    stored as unordered pairs {t, -t}; `reps` holds one representative
    per pair, the lift in [0, ell/2], sorted ascending."""

    ell: int
    reps: tuple

    def __init__(self, ell, residues):
        object.__setattr__(self, "ell", int(ell))
        reps = sorted({min(t % ell, (-t) % ell) for t in residues})
        object.__setattr__(self, "reps", tuple(reps))

    @property
    def pairs(self):
        return tuple(
            (t,) if t == 0 else (t, self.ell - t) for t in self.reps
        )

    @property
    def residues(self):
        out = set()
        for pair in self.pairs:
            out.update(pair)
        return frozenset(out)

    @property
    def is_unique(self):
        return len(self.reps) == 1

    def __contains__(self, t):
        return t % self.ell in self.residues

    def __str__(self):
        if not self.reps:
            return "{}"
        return "{%s}" % ", ".join(
            "0" if t == 0 else "±%d" % t for t in self.reps
        )


def _norm_one_traces(ell, n):
    """Traces zeta + zeta^ell of the elements of exact order n in the
    norm-1 subgroup of F_{ell^2}* (cyclic of order ell+1)."""
    ns = 2
    while arith.jacobi(ns, ell) != -1:
        ns += 1
    # F_{ell^2} = F_ell[w], w^2 = ns.  Norm(a + b w) = a^2 - ns b^2.
    def mul(x, y):
        return (
            (x[0] * y[0] + x[1] * y[1] * ns) % ell,
            (x[0] * y[1] + x[1] * y[0]) % ell,
        )

    one = (1, 0)
    traces = set()
    for a in range(ell):
        for b in range(ell):
            if (a * a - ns * b * b) % ell != 1:
                continue
            z = (a, b)
            order, x = 1, z
            while x != one:
                x = mul(x, z)
                order += 1
            if order == n:
                traces.add(2 * a % ell)
    return traces


def _split_traces(ell, n):
    """Traces zeta + zeta^(-1) of the elements of exact order n in F_ell*."""
    g = arith.primitive_root(ell)
    z0 = pow(g, (ell - 1) // n, ell)
    traces = set()
    for j in range(1, n):
        if math.gcd(j, n) == 1:
            z = pow(z0, j, ell)
            traces.add((z + pow(z, ell - 2, ell)) % ell)
    return traces


def orderkind_from_trace_det(t, d, ell):
    """The possible (projective order, kind) of a 2x2 matrix over F_ell
    with trace t and determinant d != 0, as a frozenset.

    The set has one element unless t^2 = 4d, where the charpol cannot
    distinguish a scalar matrix (order 1) from a nonsemisimple one
    (order ell).
    """
    t, d = t % ell, d % ell
    if d == 0:
        raise Unrealizable("determinant 0 is not a Frobenius at a good prime")
    disc = (t * t - 4 * d) % ell
    if disc == 0:
        return frozenset({(1, "identity"), (ell, "unipotent")})
    if arith.jacobi(disc, ell) == 1:
        s = arith.sqrt_mod(disc, ell)
        inv2 = pow(2, ell - 2, ell)
        alpha, beta = (t + s) * inv2 % ell, (t - s) * inv2 % ell
        ratio = alpha * pow(beta, ell - 2, ell) % ell
        return frozenset({(arith.mult_order(ratio, ell), "split")})
    # Conjugate eigenvalues in F_{ell^2}; the ratio r = alpha/beta
    # satisfies r^ell = 1/r, so its order divides ell + 1.  Order and
    # trace of r: r + 1/r = (alpha^2 + beta^2)/d = (t^2 - 2d)/d.
    c = (t * t - 2 * d) * pow(d, ell - 2, ell) % ell
    ns = 2
    while arith.jacobi(ns, ell) != -1:
        ns += 1
    # r is a root of x^2 - c x + 1; its order is the order of the
    # norm-1 element (c/2, s/2) with s^2 = c^2 - 4 (nonresidue here).
    inv2 = pow(2, ell - 2, ell)
    rdisc = (c * c - 4) % ell
    # rdisc is a nonresidue: write sqrt(rdisc) = sb * w with sb^2 = rdisc/ns.
    sb = arith.sqrt_mod(rdisc * pow(ns, ell - 2, ell) % ell, ell)
    z = (c * inv2 % ell, sb * inv2 % ell)

    def mul(x, y):
        return (
            (x[0] * y[0] + x[1] * y[1] * ns) % ell,
            (x[0] * y[1] + x[1] * y[0]) % ell,
        )

    order, x = 1, z
    while x != (1, 0):
        x = mul(x, z)
        order += 1
    return frozenset({(order, "nonsplit")})


def frobenius_pattern(record, p) -> DegreePattern:
    """Factor-degree pattern of record.poly modulo the good prime p.

    p must be a prime different from record.ell; BadPrime is raised for
    p = ell or when the reduction is not squarefree (ramified p).  For
    huge p the cost is dominated by one binary powering x^p mod (P, p).
    """
    if p == record.ell:
        raise BadPrime("p = ell is excluded (ramified)")
    if p < 2:
        raise BadPrime(f"{p} is not a prime")
    return ddf_pattern(record.polynomial, p)


def trace_candidates(n, kind, p, record) -> TraceCandidateSet:
    """All t with t^2 = d(zeta + 1/zeta + 2) for some zeta of exact
    order n (in F_ell for split kind, norm-1 in F_{ell^2} for nonsplit),
    where d = p^(k-1) mod ell.  Raises Unrealizable if no t exists.
    """
    ell = record.ell
    d = pow(p % ell, record.weight - 1, ell)
    if d == 0:
        raise Unrealizable("p = ell has determinant 0")
    residues = set()
    if n == 2:
        residues.add(0)
    elif n == 1 or n == ell:
        # Equal eigenvalues: t^2 = 4d.
        s = arith.sqrt_mod(4 * d % ell, ell)
        if s is not None:
            residues.update((s, ell - s))
    else:
        if kind == "split":
            if (ell - 1) % n:
                raise Unrealizable(f"no element of order {n} in F_{ell}*")
            traces = _split_traces(ell, n)
        elif kind == "nonsplit":
            if (ell + 1) % n:
                raise Unrealizable(
                    f"no norm-1 element of order {n} over F_{ell}"
                )
            traces = _norm_one_traces(ell, n)
        else:
            raise Unrealizable(f"unknown conjugacy kind {kind!r}")
        for c in traces:
            s = arith.sqrt_mod(d * (c + 2) % ell, ell)
            if s is not None:
                residues.update((s, ell - s))
    if not residues:
        raise Unrealizable(
            f"no trace with projective order {n} ({kind}) and det {d} mod {ell}"
        )
    return TraceCandidateSet(ell, residues)


def tau_mod_ell(record, p) -> TraceCandidateSet:
    """a_p mod ell up to sign, read off the pattern of record.poly mod p."""
    pattern = frobenius_pattern(record, p)
    n, kind = projective_order_from_pattern(pattern, record.ell)
    return trace_candidates(n, kind, p, record)


def is_trace_zero(record, p) -> bool:
    """Whether a_p = 0 mod ell, i.e. the projective order is exactly 2.

    Decided without full pattern extraction: order | 2 iff
    x^(p^2) = x mod (P, p), and order = 1 (trace nonzero) iff
    x^p = x; so trace zero iff the first holds and the second fails.
    """
    if p == record.ell:
        raise BadPrime("p = ell is excluded (ramified)")
    if p < 2:
        raise BadPrime(f"{p} is not a prime")
    poly = record.polynomial
    if poly.lc % p == 0:
        raise BadPrime(f"{p} divides the leading coefficient")
    f = mod_monic(mod_reduce(poly, p), p)
    der = [i * c % p for i, c in enumerate(f)][1:]
    while der and not der[-1]:
        der.pop()
    if len(mod_gcd(f, der, p)) - 1 > 0:
        raise BadPrime(f"not squarefree modulo {p}")
    x = [0, 1]
    xp = mod_pow_x(p, f, p)  # tail-trimmed by construction
    if xp == x:
        return False
    xp2 = mod_compose(xp, xp, f, p)
    return xp2 == x


@dataclass(frozen=True)
class ConsistencyResult:
    """Outcome of checking observed patterns against charpol predictions."""

    ok: bool
    weight: int
    ell: int
    pmax: int
    checked: int
    skipped: tuple  # (p, reason) pairs
    failure: tuple | None  # (p, observed (order, kind), expected set)

    def __str__(self):
        if self.ok:
            return (
                f"charpol consistency k={self.weight} ell={self.ell}: "
                f"{self.checked} primes <= {self.pmax} agree "
                f"({len(self.skipped)} skipped)"
            )
        p, got, want = self.failure
        return (
            f"charpol consistency k={self.weight} ell={self.ell}: "
            f"MISMATCH at p={p}: observed {got}, expected one of {sorted(want)}"
        )


def charpol_consistency(record, pmax) -> ConsistencyResult:
    """Check that for every good prime p <= pmax the observed pattern's
    (order, kind) matches the prediction from trace a_p(k) and
    determinant p^(k-1) mod ell.  Mismatches are data, not errors: the
    first one is reported in the result.
    """
    ell = record.ell
    form = cusp_form_level1(record.weight, max(pmax, 2))
    checked, skipped = 0, []
    for p in arith.primes_below(pmax + 1):
        if p == ell:
            skipped.append((p, "p = ell"))
            continue
        try:
            pattern = frobenius_pattern(record, p)
        except BadPrime as exc:
            skipped.append((p, str(exc)))
            continue
        t = form.a(p) % ell
        d = pow(p, record.weight - 1, ell)
        expected = orderkind_from_trace_det(t, d, ell)
        try:
            observed = projective_order_from_pattern(pattern, ell)
        except InconsistentPattern:
            observed = ("outside catalog", str(pattern))
        if observed not in expected:
            return ConsistencyResult(
                False, record.weight, ell, pmax, checked,
                tuple(skipped), (p, observed, expected),
            )
        checked += 1
    return ConsistencyResult(
        True, record.weight, ell, pmax, checked, tuple(skipped), None
    )
