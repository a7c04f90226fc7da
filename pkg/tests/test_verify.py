"""Verification pipeline: irreducibility proofs, pattern surveys,
discriminant stage, and the aggregate report."""

import time
from fractions import Fraction

import pytest

from galrep.arith import crt, primes_below
from galrep.errors import BadPrime, InvalidInput, NonInvertibleLeading
from galrep.modcurve import InconsistentPattern, pgl2_cycle_types
from galrep.poly import IntPolynomial, poly_disc
from galrep.records import GaloisPolyRecord, get_record
from galrep.verify import (
    NOT_TOTALLY_REAL,
    TOTALLY_REAL,
    SieveProof,
    Unknown,
    VerifyOptions,
    Witness,
    certify_cofactor,
    chebotarev_density,
    irreducible_over_Q,
    oddness_evidence,
    pgl2_consistency,
    trial_division,
    verify_record,
)


# ------------------------------------------------------------ irreducibility

def test_witness_x2_plus_1():
    # p=2 is bad (reduction (x+1)^2); p=3 is the first witness
    assert irreducible_over_Q(IntPolynomial([1, 0, 1])) == Witness(3)


def test_reducible_hint():
    res = irreducible_over_Q(IntPolynomial([-1, 0, 1]))
    assert isinstance(res, Unknown)
    assert res.candidate_degrees == (1,)


def test_sieve_proof_a4_quartic():
    # Galois group A4: no 4-cycles, so no mod-p witness exists, but
    # patterns {1,3} and {2,2} have disjoint proper sub-sums
    res = irreducible_over_Q(IntPolynomial([12, 8, 0, 0, 1]))
    assert isinstance(res, SieveProof)
    assert len(res.primes) >= 2


def test_sieve_cannot_decide_x4_plus_1():
    # irreducible over Q yet reducible mod every prime; degree 2
    # survives the sieve forever
    res = irreducible_over_Q(IntPolynomial([1, 0, 0, 0, 1]), pmax=500)
    assert isinstance(res, Unknown)
    assert res.candidate_degrees == (2,)


def test_irreducible_preconditions():
    with pytest.raises(InvalidInput):
        irreducible_over_Q(IntPolynomial([1, 1]))  # degree 1
    with pytest.raises(InvalidInput):
        irreducible_over_Q(IntPolynomial([2, 0, 2]))  # not primitive


def test_records_have_witnesses():
    for rid in ("k12l31", "k16l29"):
        res = irreducible_over_Q(get_record(rid).polynomial)
        assert isinstance(res, Witness), rid


# ------------------------------------------------------------------ patterns

def test_chebotarev_densities_sum_to_one():
    for ell in (3, 5, 11, 29, 31):
        total = sum(
            chebotarev_density(c, ell) for c in pgl2_cycle_types(ell).classes
        )
        assert total == Fraction(1), ell


def test_chebotarev_known_values():
    cat = {(c.order, c.kind): c for c in pgl2_cycle_types(11).classes}
    assert chebotarev_density(cat[(11, "unipotent")], 11) == Fraction(1, 11)
    assert chebotarev_density(cat[(2, "split")], 11) == Fraction(1, 20)
    assert chebotarev_density(cat[(2, "nonsplit")], 11) == Fraction(1, 24)


def test_pgl2_consistency_record():
    rec = get_record("k12l31")
    rep = pgl2_consistency(rec, pmax=600)
    assert rep.ok and rep.order_ell_seen and rep.order_ell_plus_one_seen
    assert isinstance(rep.irreducibility, Witness)
    assert sum(row[2] for row in rep.counts) == rep.sample_size
    assert rep.sample_size > 80
    assert "order" in str(rep)


def test_pgl2_inconsistent_pattern():
    fake = GaloisPolyRecord(12, 31, "projective", tuple([-2] + [0] * 31 + [1]))
    with pytest.raises(InconsistentPattern) as exc:
        pgl2_consistency(fake, pmax=200)
    assert "p=" in str(exc.value)


def test_pgl2_reducible_fake_fails_transitivity():
    # (x^2+1)(x^2-2) padded to an ell=3 projective shape
    red = GaloisPolyRecord(2, 3, "projective", (-2, 0, -1, 0, 1))
    rep = pgl2_consistency(red, pmax=300)
    assert not rep.ok
    assert not rep.order_ell_seen and not rep.order_ell_plus_one_seen
    assert isinstance(rep.irreducibility, Unknown)


def test_pgl2_explicit_sample():
    rec = get_record("k16l29")
    rep = pgl2_consistency(rec, sample=[2, 5, 7, 11])
    assert rep.sample_size == 4
    with pytest.raises(BadPrime):
        pgl2_consistency(rec, sample=[29])


# ------------------------------------------------------------------- oddness

def test_oddness_toy():
    assert oddness_evidence(IntPolynomial([-2, 0, 1])) == TOTALLY_REAL
    assert oddness_evidence(IntPolynomial([1, 0, 1])) == NOT_TOTALLY_REAL
    with pytest.raises(InvalidInput):
        oddness_evidence(IntPolynomial([1, 2, 1]))  # square


def test_oddness_records():
    # negative-disc shortcut for an ell=31 record, Sturm for (16, 29)
    assert oddness_evidence(get_record("k12l31").polynomial) == NOT_TOTALLY_REAL
    P = get_record("k16l29").polynomial
    disc = poly_disc(P)
    assert disc > 0
    assert oddness_evidence(P, disc=disc) == NOT_TOTALLY_REAL


# ------------------------------------------------------------ trial division

def test_trial_division():
    assert trial_division(-720, 100) == ({2: 4, 3: 2, 5: 1}, 1)
    assert trial_division(999983, 10**6) == ({999983: 1}, 1)
    big = 1000003
    factors, cof = trial_division(4 * big * big, 10**6)
    assert factors == {2: 2} and cof == big * big
    with pytest.raises(InvalidInput):
        trial_division(0, 100)


def test_certify_cofactor_split_retry():
    # cubic congruent to (x-1)^2 (x-2) mod 25 and (x-3)^3 mod 49: the
    # derivative-gcd degrees differ mod 5 and mod 7, so the Euclidean
    # sequence in Z/35 must hit a zero divisor
    a = [-2, 5, -4, 1]
    b = [-27, 27, -9, 1]
    coeffs = [crt([ca % 25, cb % 49], [25, 49])[0] for ca, cb in zip(a, b)]
    coeffs[-1] = 1
    P = IntPolynomial(coeffs)
    assert poly_disc(P) % (35 * 35) == 0
    from galrep.orders import cofactor_integrality_test

    with pytest.raises(NonInvertibleLeading) as exc:
        cofactor_integrality_test(P, 35)
    assert 35 % exc.value.factor == 0
    ok, parts = certify_cofactor(P, 35)
    # the split ran to completion; each certified part divides 35
    assert all(35 % part == 0 for part in parts)
    assert isinstance(ok, bool)


# ------------------------------------------------------------- full pipeline

def test_verify_record_full_pass():
    rec = get_record("k16l29")
    t0 = time.time()
    rep = verify_record(rec)
    elapsed = time.time() - t0
    assert rep.verdict, rep.text()
    assert [c.name for c in rep.checks] == [
        "charpol-consistency", "irreducibility", "pgl2-patterns",
        "oddness", "field-disc", "serre-weight",
    ]
    assert all(c.status == "pass" for c in rep.checks)
    text = rep.text()
    assert "record: k16l29" in text and "verdict: pass" in text
    assert "v_29(field): 43" in text
    assert "3^6 19^4 29^43" in text
    d = rep.to_dict()
    assert d["verdict"] == "pass" and len(d["checks"]) == 6
    assert elapsed < 300


def test_verify_record_mutant_fails_fast():
    rec = get_record("k12l31")
    coeffs = list(rec.coeffs)
    coeffs[5] += 1
    mut = GaloisPolyRecord(rec.weight, rec.ell, rec.kind, tuple(coeffs))
    t0 = time.time()
    rep = verify_record(mut)
    assert not rep.verdict
    assert rep.checks[0].status == "fail"
    assert {c.status for c in rep.checks[1:]} == {"skip"}
    assert time.time() - t0 < 10
    assert "verdict: FAIL" in rep.text()


def test_verify_report_text_stable():
    rec = get_record("k12l31")
    coeffs = list(rec.coeffs)
    coeffs[3] -= 1
    mut = GaloisPolyRecord(rec.weight, rec.ell, rec.kind, tuple(coeffs))
    # two runs produce byte-identical reports
    assert verify_record(mut).text() == verify_record(mut).text()
