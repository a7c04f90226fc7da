"""Verification pipeline for Galois polynomial records.

What is proved versus what is evidence:

  * irreducible_over_Q returns a proof object: a mod-p irreducibility
    witness, or a factor-degree sieve (no proper factor degree is
    consistent with the patterns at several good primes).
  * pgl2_consistency is evidence, not a group computation: every
    sampled Frobenius pattern lies in the PGL2(F_ell) cycle-type
    catalog, the action is transitive (irreducibility), and elements
    of order ell and ell+1 are witnessed.  Frequencies are reported
    against Chebotarev densities but never gate the verdict.
  * The discriminant stage certifies the support of the field
    discriminant: trial division below a fixed bound, Dedekind /
    maximal-order valuations at the small primes, and the cofactor
    integrality certificate for the unfactored square part.  The Serre
    weight is then v_ell(disc K) - ell + 2.
  * Oddness: an integer Sturm count < degree exhibits complex roots,
    so complex conjugation acts nontrivially on them.

verify_record runs the stages cheapest-first and collects their
outcomes as data; the verdict passes only when every stage passes.
Sub-check failures are reported, never raised.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import arith
from .errors import GalrepError, InvalidInput, BadPrime, NonInvertibleLeading
from .frobenius import charpol_consistency
from .modcurve import CycleType, InconsistentPattern, pgl2_cycle_types
from .orders import cofactor_integrality_test, dedekind_vq
from .poly import IntPolynomial, ddf_pattern, poly_disc, sturm_real_root_count

NOT_TOTALLY_REAL = "NotTotallyReal"
TOTALLY_REAL = "TotallyReal"


# ------------------------------------------------------------ irreducibility

@dataclass(frozen=True)
class Witness:
    """Proof: P mod p is irreducible for a good prime p."""

    p: int

    def __str__(self):
        return f"irreducible mod {self.p}"


@dataclass(frozen=True)
class SieveProof:
    """Proof: across these good primes, no degree in 1..deg-1 is a
    consistent factor-degree sub-sum, so no proper factor exists."""

    primes: tuple

    def __str__(self):
        return f"factor-degree sieve over {len(self.primes)} primes"


@dataclass(frozen=True)
class Unknown:
    """Neither proof found.  candidate_degrees lists the proper factor
    degrees not excluded by the sieve; a short list (e.g. a persistent
    degree-1 part) is a strong reducibility hint."""

    candidate_degrees: tuple

    def __str__(self):
        degs = ", ".join(str(d) for d in self.candidate_degrees)
        return f"not decided; possible proper factor degrees {{{degs}}}"


def _proper_subset_sums(pattern, n):
    mask = 1
    for d in pattern:
        mask |= mask << d
    return {s for s in range(1, n) if (mask >> s) & 1}


def irreducible_over_Q(P: IntPolynomial, pmax: int = 300):
    """Witness(p), SieveProof(primes), or Unknown(candidate_degrees).

    Witness: P mod p irreducible at a good prime (reduction squarefree,
    leading coefficient a unit).  SieveProof: intersecting the sets of
    achievable factor-degree sub-sums over the good primes up to pmax
    leaves no proper nonempty degree.  Both outcomes prove
    irreducibility over Q; Unknown decides nothing.
    """
    n = P.degree
    if n < 2:
        raise InvalidInput("need degree >= 2")
    if math.gcd(*[int(c) for c in P.coeffs]) != 1:
        raise InvalidInput("polynomial must be primitive")
    possible = None
    used = []
    for p in arith.primes_below(pmax + 1):
        try:
            pattern = ddf_pattern(P, p)
        except BadPrime:
            continue
        if len(pattern) == 1:
            return Witness(p)
        used.append(p)
        sums = _proper_subset_sums(pattern, n)
        possible = sums if possible is None else possible & sums
        if not possible:
            return SieveProof(tuple(used))
    if possible is None:
        possible = set(range(1, n))
    return Unknown(tuple(sorted(possible)))


# ------------------------------------------------------- PGL2 pattern survey

def chebotarev_density(cls: CycleType, ell: int) -> Fraction:
    """Density of the conjugacy classes with this (order, kind) among
    PGL2(F_ell): identity 1/|G|, unipotent 1/ell, split order d
    phi(d)/(2(ell-1)), nonsplit order d phi(d)/(2(ell+1))."""
    size = ell * (ell - 1) * (ell + 1)
    if cls.kind == "identity":
        return Fraction(1, size)
    if cls.kind == "unipotent":
        return Fraction(ell * ell - 1, size)
    phi = sum(1 for j in range(1, cls.order) if math.gcd(j, cls.order) == 1)
    if cls.kind == "split":
        return Fraction(phi * ell * (ell + 1), 2 * size)
    return Fraction(phi * ell * (ell - 1), 2 * size)


@dataclass(frozen=True)
class Pgl2Report:
    """Pattern survey over a prime sample.  ok requires catalog
    membership throughout (else InconsistentPattern was raised),
    transitivity, and witnessed orders ell and ell+1."""

    ell: int
    sample_size: int
    counts: tuple  # ((order, kind, observed count, expected density), ...)
    order_ell_seen: bool
    order_ell_plus_one_seen: bool
    irreducibility: object
    ok: bool

    def __str__(self):
        lines = [
            f"patterns over {self.sample_size} primes, ell={self.ell}: "
            f"{'ok' if self.ok else 'FAIL'}",
            f"  transitivity: {self.irreducibility}",
            f"  order ell seen: {self.order_ell_seen}, "
            f"order ell+1 seen: {self.order_ell_plus_one_seen}",
        ]
        for order, kind, got, dens in self.counts:
            want = float(dens) * self.sample_size
            lines.append(
                f"  order {order:>2} {kind:<9} observed {got:>4}"
                f"  expected ~{want:.1f}"
            )
        return "\n".join(lines)


def pgl2_consistency(record, sample=None, pmax: int = 2000,
                     irreducibility=None) -> Pgl2Report:
    """Survey Frobenius patterns of the record over a prime sample.

    sample=None uses all good primes below pmax.  A pattern outside the
    PGL2(F_ell) catalog raises InconsistentPattern naming the prime:
    such a pattern disproves image containment in PGL2(F_ell) acting on
    P^1.  A precomputed irreducible_over_Q result may be passed in.
    """
    ell = record.ell
    P = record.polynomial
    catalog = pgl2_cycle_types(ell)
    counts = {(c.order, c.kind): 0 for c in catalog.classes}
    explicit = sample is not None
    if not explicit:
        sample = [p for p in arith.primes_below(pmax) if p != ell]
    size = 0
    for p in sample:
        try:
            pattern = ddf_pattern(P, p)
        except BadPrime:
            if explicit:
                raise
            continue
        try:
            cls = catalog.lookup(pattern)
        except InconsistentPattern as exc:
            raise InconsistentPattern(f"p={p}: {exc}") from None
        counts[(cls.order, cls.kind)] += 1
        size += 1
    if irreducibility is None:
        irreducibility = irreducible_over_Q(P)
    transitive = isinstance(irreducibility, (Witness, SieveProof))
    seen_ell = counts.get((ell, "unipotent"), 0) > 0
    seen_ell1 = counts.get((ell + 1, "nonsplit"), 0) > 0
    table = tuple(
        (c.order, c.kind, counts[(c.order, c.kind)], chebotarev_density(c, ell))
        for c in catalog.classes
    )
    return Pgl2Report(
        ell, size, table, seen_ell, seen_ell1, irreducibility,
        transitive and seen_ell and seen_ell1,
    )


# ------------------------------------------------------------------- oddness

def oddness_evidence(P: IntPolynomial, disc=None) -> str:
    """NotTotallyReal iff the number of real roots is below the degree.

    A negative discriminant short-circuits (an odd number of complex
    conjugate pairs); otherwise the integer Sturm count decides.
    """
    if disc is None:
        disc = poly_disc(P)
    if disc == 0:
        raise InvalidInput("polynomial not squarefree")
    if disc < 0:
        return NOT_TOTALLY_REAL
    count = sturm_real_root_count(P)
    return NOT_TOTALLY_REAL if count < P.degree else TOTALLY_REAL


# ------------------------------------------------------------- trial factors

def trial_division(n: int, bound: int):
    """(factors, cofactor) with factors = {q: v_q(n)} over primes below
    bound and cofactor the unfactored positive part."""
    n = abs(n)
    if n == 0:
        raise InvalidInput("zero has no factorization")
    factors = {}
    for q in arith.primes_below(bound):
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            factors[q] = e
    if 1 < n < bound:
        factors[n] = factors.get(n, 0) + 1
        n = 1
    return factors, n


def certify_cofactor(P: IntPolynomial, B: int, disc=None):
    """Run the cofactor integrality certificate, splitting B and
    retrying whenever a gcd in Z/B hits a zero divisor (the divisor is
    a free factor).  Returns (ok, parts_certified)."""
    parts = [B]
    done = []
    while parts:
        b = parts.pop()
        if b == 1:
            continue
        try:
            if not cofactor_integrality_test(P, b, disc=disc):
                return False, tuple(done)
            done.append(b)
        except NonInvertibleLeading as exc:
            g = math.gcd(exc.factor, b)
            if not 1 < g < b:
                raise
            parts.extend((g, b // g))
    return True, tuple(sorted(done))


# ----------------------------------------------------------------- pipeline

@dataclass(frozen=True)
class VerifyOptions:
    charpol_pmax: int = 100
    irreducible_pmax: int = 300
    pattern_pmax: int = 2000
    trial_bound: int = 10**6
    fail_fast: bool = True


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # pass | fail | skip
    data: dict


@dataclass(frozen=True)
class VerificationReport:
    record_id: str
    kind: str
    weight: int
    ell: int
    verdict: bool
    checks: tuple

    def text(self) -> str:
        lines = [
            f"record: {self.record_id}",
            f"kind: {self.kind}",
            f"weight: {self.weight}",
            f"ell: {self.ell}",
            f"verdict: {'pass' if self.verdict else 'FAIL'}",
        ]
        for c in self.checks:
            lines.append(f"check {c.name}: {c.status}")
            for key in sorted(c.data):
                lines.append(f"  {key}: {c.data[key]}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "record": self.record_id,
            "kind": self.kind,
            "weight": self.weight,
            "ell": self.ell,
            "verdict": "pass" if self.verdict else "fail",
            "checks": [
                {"name": c.name, "status": c.status,
                 "data": {k: str(v) for k, v in sorted(c.data.items())}}
                for c in self.checks
            ],
        }

    def __str__(self):
        return self.text()


def _check_charpol(record, o, ctx):
    r = charpol_consistency(record, o.charpol_pmax)
    data = {"primes checked": r.checked, "primes skipped": len(r.skipped)}
    if r.failure is not None:
        p, got, want = r.failure
        data["mismatch"] = f"p={p} observed={got} expected={sorted(want)}"
    ok = r.ok and r.checked > 0
    if r.checked == 0:
        data["mismatch"] = "no checkable prime (every reduction ramified)"
    return ok, data


def _check_irreducible(record, o, ctx):
    res = irreducible_over_Q(record.polynomial, o.irreducible_pmax)
    ctx["irreducibility"] = res
    return isinstance(res, (Witness, SieveProof)), {"proof": str(res)}


def _check_patterns(record, o, ctx):
    try:
        rep = pgl2_consistency(
            record, pmax=o.pattern_pmax,
            irreducibility=ctx.get("irreducibility"),
        )
    except InconsistentPattern as exc:
        return False, {"inconsistent": str(exc)}
    data = {
        "sample size": rep.sample_size,
        "transitive": str(rep.irreducibility),
        "order ell seen": rep.order_ell_seen,
        "order ell+1 seen": rep.order_ell_plus_one_seen,
    }
    return rep.ok, data


def _check_oddness(record, o, ctx):
    P = record.polynomial
    disc = ctx["disc"] = poly_disc(P)
    if disc == 0:
        return False, {"error": "zero discriminant (square factor)"}
    count = sturm_real_root_count(P)
    pairs = (P.degree - count) // 2
    parity_ok = (disc < 0) == (pairs % 2 == 1)
    data = {
        "real roots": count,
        "degree": P.degree,
        "disc sign": "-" if disc < 0 else "+",
        "parity consistent": parity_ok,
    }
    return count < P.degree and parity_ok, data


def _check_field_disc(record, o, ctx):
    P = record.polynomial
    ell = record.ell
    disc = ctx.get("disc")
    if disc is None:
        disc = ctx["disc"] = poly_disc(P)
    if disc == 0:
        return False, {"error": "zero discriminant (square factor)"}
    factors, cofactor = trial_division(disc, o.trial_bound)
    data = {
        "poly disc digits": len(str(abs(disc))),
        "small factors": " ".join(
            f"{q}^{e}" for q, e in sorted(factors.items())
        ),
        "cofactor digits": len(str(cofactor)),
    }
    ok = True
    if cofactor > 1:
        if not arith.is_perfect_square(cofactor):
            data["cofactor"] = "not a perfect square: a large prime ramifies"
            return False, data
        B = arith.isqrt(cofactor)
        cert, parts = certify_cofactor(P, B, disc=disc)
        data["cofactor certificate"] = (
            f"pass ({len(parts)} part(s))" if cert else "FAIL"
        )
        ok = ok and cert
    try:
        vals = {q: dedekind_vq(P, q, disc=disc) for q in sorted(factors)}
    except GalrepError as exc:
        data["error"] = str(exc)
        return False, data
    for q, (maximal, v) in vals.items():
        data[f"v_{q}(field)"] = v
        if maximal and v != factors[q]:
            data[f"v_{q}(field)"] = f"{v} (maximality contradiction)"
            ok = False
        if q != ell and v != 0:
            ok = False
    ctx["v_ell_field"] = vals.get(ell, (True, 0))[1]
    ctx["v_ell_poly"] = factors.get(ell, 0)
    if ctx["v_ell_field"] == 0:
        data["v_ell"] = "field discriminant prime to ell"
        ok = False
    return ok, data


def _check_serre_weight(record, o, ctx):
    v = ctx.get("v_ell_field")
    if v is None:
        return False, {"error": "field-disc stage did not run"}
    w = v - record.ell + 2
    poly_v_ok = ctx.get("v_ell_poly", 0) >= record.weight + record.ell - 2
    data = {
        "v_ell(field disc)": v,
        "serre weight": w,
        "record weight": record.weight,
        "v_ell(poly disc) >= k+ell-2": poly_v_ok,
    }
    return w == record.weight and poly_v_ok, data


_STAGES = (
    ("charpol-consistency", _check_charpol),
    ("irreducibility", _check_irreducible),
    ("pgl2-patterns", _check_patterns),
    ("oddness", _check_oddness),
    ("field-disc", _check_field_disc),
    ("serre-weight", _check_serre_weight),
)


def verify_record(record, options: VerifyOptions | None = None) -> VerificationReport:
    """Run all verification stages on a record, cheapest first.

    Stage failures are collected as data; with fail_fast (default) the
    remaining stages are skipped once one fails.  The verdict passes
    only if every stage ran and passed.
    """
    o = options or VerifyOptions()
    ctx: dict = {}
    checks = []
    failed = False
    for name, fn in _STAGES:
        if failed and o.fail_fast:
            checks.append(CheckResult(name, "skip", {"reason": "earlier stage failed"}))
            continue
        try:
            ok, data = fn(record, o, ctx)
        except GalrepError as exc:
            ok, data = False, {"error": f"{type(exc).__name__}: {exc}"}
        checks.append(CheckResult(name, "pass" if ok else "fail", data))
        failed = failed or not ok
    return VerificationReport(
        record.record_id, record.kind, record.weight, record.ell,
        not failed, tuple(checks),
    )
