"""Elliptic 11-torsion pipeline: periods, grid, builders, point counts."""

import random

import pytest
from mpmath import mp, mpf

from galrep.arith import is_prime, primes_below
from galrep.errors import BadPrime, InvalidInput
from galrep.frobenius import charpol_consistency, frobenius_pattern
from galrep.genus1 import (
    CURVE_X0_11,
    EllipticCurveQ,
    _canonical_points,
    _wp,
    _wp_coeffs,
    agm_periods,
    ap_via_bsgs,
    build_full_poly,
    build_projective_poly,
    division_poly_part,
    torsion_x_table,
)
from galrep.modcurve import pgl2_cycle_types
from galrep.poly import convolve
from galrep.qexp import cusp_form_level1


E = CURVE_X0_11


def test_curve_invariants():
    assert (E.b2, E.b4, E.b6, E.b8) == (-4, -20, -79, -21)
    assert (E.c4, E.c6) == (496, 20008)
    assert E.disc == -(11 ** 5)
    assert E.c4 ** 3 - E.c6 ** 2 == 1728 * E.disc
    with pytest.raises(InvalidInput):
        EllipticCurveQ(0, 0, 0, 0, 0)


def test_agm_periods_known_value():
    lat = agm_periods(E, 300)
    with mp.workprec(330):
        # real period of the conductor-11 curve
        want = mpf("1.269209304279553421688794617")
        assert mp.fabs(lat.omega1 - want) < mpf(10) ** -25
        assert mp.im(lat.tau) > 0
        assert mp.fabs(mp.re(lat.tau)) <= mpf("0.5000001")
    with pytest.raises(InvalidInput):
        agm_periods(E, 100)


def test_agm_periods_stability():
    B = 256
    a = agm_periods(E, B)
    b = agm_periods(E, B + 64)
    with mp.workprec(B + 128):
        diff = mp.fabs(a.omega1 - b.omega1) + mp.fabs(a.omega2 - b.omega2)
        assert diff < mp.ldexp(1, -(B - 16))


def test_torsion_grid_shape_and_distinctness():
    lat = agm_periods(E, 300)
    grid = torsion_x_table(lat, 11)
    assert len(grid.x) == 120
    assert len(grid.canonical_points()) == 60
    with mp.workprec(364):
        keys = {mp.nstr(v, 25) for v in grid.x.values()}
    assert len(keys) == 60
    for (i, j) in [(1, 0), (3, 7), (0, 4)]:
        assert grid.x[(i, j)] is grid.x[((-i) % 11, (-j) % 11)]


def test_wp_is_even():
    lat = agm_periods(E, 300)
    with mp.workprec(364):
        g2 = mpf(E.g2.numerator) / E.g2.denominator
        g3 = mpf(E.g3.numerator) / E.g3.denominator
        data = (lat.omega1, lat.omega2, g2, g3, _wp_coeffs(g2, g3, 128),
                mp.fabs(lat.omega1))
        rng = random.Random(5)
        for _ in range(6):
            z = (mp.mpf(rng.uniform(-2, 2)) * lat.omega1
                 + mp.mpf(rng.uniform(-2, 2)) * lat.omega2) / 7
            if mp.fabs(z) < mp.mpf("0.01"):
                continue
            assert mp.fabs(_wp(z, data) - _wp(-z, data)) < mp.ldexp(1, -280)


def test_grid_roots_of_division_polynomial():
    # Values are evaluated against exact psi_11.  Raw residuals are
    # amplified by |psi_11'| (~2^370 at the near-pole roots), so the
    # meaningful statement "x lies within 2^(-B/2) of a root" is the
    # Newton-normalized residual |psi(x)/psi'(x)|.
    B = 300
    lat = agm_periods(E, B)
    grid = torsion_x_table(lat, 11)
    psi = division_poly_part(E, 11)
    dpsi = [d * int(c) for d, c in enumerate(psi.coeffs)][1:]
    with mp.workprec(B + 80):
        bound = mp.ldexp(1, -(B // 2))
        for pt in grid.canonical_points():
            v = grid.x[pt]
            num = mp.mpc(0)
            for c in reversed(psi.coeffs):
                num = num * v + int(c)
            den = mp.mpc(0)
            for c in reversed(dpsi):
                den = den * v + c
            assert mp.fabs(num / den) < bound, pt


def test_torsion_table_requires_precision():
    lat = agm_periods(E, 128)
    with pytest.raises(InvalidInput):
        torsion_x_table(lat, 11)


def test_division_poly_shapes():
    for n in (3, 5, 7, 9, 11):
        f = division_poly_part(E, n)
        assert f.degree == (n * n - 1) // 2
        assert f.lc == n
    f3 = division_poly_part(E, 3)
    assert list(f3.coeffs) == [E.b8, 3 * E.b6, 3 * E.b4, E.b2, 3]


def test_division_poly_rational_5_torsion():
    # the rational 5-torsion of this curve sits over x = 5 and x = 16
    f5 = division_poly_part(E, 5)
    for x in (5, 16):
        assert sum(int(c) * x ** d for d, c in enumerate(f5.coeffs)) == 0


def test_build_projective_stability_and_consistency():
    r300 = build_projective_poly(E, bits=300)
    r364 = build_projective_poly(E, bits=364)
    assert r300.degree == 12
    assert r300.coeffs == r364.coeffs
    assert r300.kind == "projective" and r300.ell == 11 and r300.weight == 12
    assert charpol_consistency(r300, 200).ok
    # sum of the twelve line sums = sum of x over all 120 points
    psi = division_poly_part(E, 11)
    a59 = int(psi.coeffs[-2])
    assert int(r300.coeffs[-2]) == 2 * a59 // 11


def test_projective_patterns_in_catalog():
    record = build_projective_poly(E, bits=300)
    catalog = pgl2_cycle_types(11)
    rng = random.Random(11)
    seen = 0
    while seen < 50:
        p = rng.randrange(13, 10 ** 6)
        while not is_prime(p):
            p += 1
        try:
            pattern = frobenius_pattern(record, p)
        except BadPrime:
            continue
        catalog.lookup(pattern)  # raises InconsistentPattern on failure
        seen += 1


def test_build_full_poly_matches_oracle():
    record = build_full_poly(E)
    assert record.degree == 120
    assert record.kind == "full"
    psi = division_poly_part(E, 11)
    n = psi.degree
    half = [int(c) * 11 ** (n - 1 - d)
            for d, c in enumerate(psi.coeffs[:-1])] + [1]
    assert list(record.coeffs) == convolve(half, half)


def test_ap_small_known_values():
    for p, want in ((2, -2), (3, -1), (5, 1), (7, -2), (13, 4), (101, 2)):
        assert ap_via_bsgs(E, p) == want


def test_ap_matches_tau_mod_11():
    form = cusp_form_level1(12, 200)
    for p in primes_below(200):
        if p == 11:
            continue
        assert (form.a(p) - ap_via_bsgs(E, p)) % 11 == 0, p


def test_ap_bsgs_hasse_bound():
    rng = random.Random(17)
    checked = 0
    while checked < 100:
        p = rng.randrange(10 ** 6, 10 ** 9) | 1
        while not is_prime(p):
            p += 2
        if p == 11 or E.disc % p == 0:
            continue
        a = ap_via_bsgs(E, p)
        assert a * a <= 4 * p, (p, a)
        assert (p + 1 - a) % 5 == 0, (p, a)
        checked += 1


def test_ap_bsgs_large_prime():
    p = 10 ** 12 + 39
    a = ap_via_bsgs(E, p)
    assert a * a <= 4 * p
    assert (p + 1 - a) % 5 == 0
    assert ap_via_bsgs(E, p) == a  # deterministic


def test_ap_rejects_bad_input():
    with pytest.raises(BadPrime):
        ap_via_bsgs(E, 11)
    with pytest.raises(BadPrime):
        ap_via_bsgs(E, 91)
