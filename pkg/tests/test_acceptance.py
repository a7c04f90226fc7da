"""Acceptance suite: the toolkit's headline claims, one test each.

Each test prints a single "[criterion NN] PASS/FAIL ..." line (visible
with -s or on failure) and enforces the stated wall-clock budget.
Criterion 11 depends on external record files and skips, with an
explanation, when they are not installed.
"""

import json
import math
import os
import random
import time
from pathlib import Path

import pytest

from test_modcurve import pgl2_brute_cycle_data

from galrep.arith import is_prime_strict, primes_below
from galrep.cli import main
from galrep.frobenius import charpol_consistency, tau_mod_ell
from galrep.genus1 import (
    CURVE_X0_11,
    ap_via_bsgs,
    build_full_poly,
    build_projective_poly,
    division_poly_part,
)
from galrep.lehmer import (
    DEFAULT_SIEVE,
    default_detectors,
    search,
    search_partitioned,
    verify_candidate,
)
from galrep.modcurve import dim_J_gammaH, genus_X1, pgl2_cycle_types
from galrep.modsym import build_space, eigensystem_check
from galrep.poly import convolve, poly_disc, sturm_real_root_count
from galrep.qexp import cusp_form_level1
from galrep.records import GaloisPolyRecord, builtin_records, get_record
from galrep.verify import verify_record

RECORD_IDS = ("k12l31", "k16l29", "k20l31", "k22l31")
P_STAR = 982149821766199295999

_cache = {}


def _line(n, ok, detail, t0, limit):
    elapsed = time.time() - t0
    status = "PASS" if ok else "FAIL"
    msg = f"[criterion {n:2d}] {status} {detail} ({elapsed:.1f}s, limit {limit}s)"
    print(msg)
    assert ok, msg
    assert elapsed <= limit, f"over budget: {msg}"


def _reports():
    if "reports" not in _cache:
        _cache["reports"] = {
            rid: verify_record(get_record(rid)) for rid in RECORD_IDS
        }
    return _cache["reports"]


def _discs():
    if "discs" not in _cache:
        _cache["discs"] = {
            rid: poly_disc(get_record(rid).polynomial) for rid in RECORD_IDS
        }
    return _cache["discs"]


def _check_data(report, name):
    for c in report.checks:
        if c.name == name:
            return c.data
    raise AssertionError(f"no stage {name} in {report.record_id}")


def test_criterion_01_dimension_table(capsys):
    t0 = time.time()
    code = main(["tables", "dims"])
    doc = json.loads(capsys.readouterr().out)
    rows = [(r["k"], r["ell"], r["gcd"], r["dim_j1"], r["dim_jh"])
            for r in doc["results"]["rows"]]
    want = [(12, 31, 10, 26, 6), (16, 29, 14, 22, 4),
            (20, 31, 6, 26, 6), (22, 31, 10, 26, 6)]
    with capsys.disabled():
        _line(1, code == 0 and rows == want,
              "dimension table rows exact", t0, 1)


def test_criterion_02_genus_formula():
    t0 = time.time()
    got = (genus_X1(31), genus_X1(29), genus_X1(11))
    _line(2, got == (26, 22, 1), f"genus X1(31,29,11) = {got}", t0, 1)


def test_criterion_03_charpol_consistency():
    t0 = time.time()
    ok = True
    checked = []
    for rid in RECORD_IDS:
        r = charpol_consistency(get_record(rid), 500)
        ok = ok and r.ok and r.failure is None and r.checked > 50
        checked.append(r.checked)
    _line(3, ok, f"order/kind vs q-expansion, p<500, checked {checked}",
          t0, 120)


def test_criterion_04_tau_mod_31_showcase():
    record = get_record("k12l31")
    expected = {4351: (8,), 10401: (0,), 11979: (11,), 17557: (8,)}
    ok, notes = True, []
    t_all = time.time()
    for off, reps in sorted(expected.items()):
        t0 = time.time()
        got = tau_mod_ell(record, 10 ** 1000 + off)
        took = time.time() - t0
        if got.reps == reps:
            notes.append(f"+{off}:{got}")
        elif set(reps) < set(got.reps):
            ok = False
            notes.append(f"+{off}: STRICT SUPERSET {got} (disambiguation "
                         "expectation failed)")
        else:
            ok = False
            notes.append(f"+{off}: wrong {got}")
        assert took <= 600, f"+{off} took {took:.0f}s (> 10 min)"
    _line(4, ok, "tau mod 31 at 10^1000+k: " + " ".join(notes), t_all, 2400)


def test_criterion_05_discriminant_pipeline():
    t0 = time.time()
    reports = _reports()
    discs = _discs()
    ok = all(r.verdict for r in reports.values())
    notes = []

    data = _check_data(reports["k16l29"], "field-disc")
    ok &= data.get("v_29(field)") == 43
    ok &= data.get("v_3(field)") == 0 and data.get("v_19(field)") == 0
    small = data.get("small factors", "")
    ok &= "3^6" in small and "19^4" in small
    ok &= str(data.get("cofactor certificate", "")).startswith("pass")
    ok &= data.get("cofactor digits", 0) > 1  # survived 10^6 trial division
    notes.append(f"v29={data.get('v_29(field)')}")

    for rid, k in (("k12l31", 12), ("k20l31", 20), ("k22l31", 22)):
        d31 = _check_data(reports[rid], "field-disc")
        ok &= d31.get("v_31(field)") == k + 29
        ok &= discs[rid] < 0
        notes.append(f"{rid}:v31={d31.get('v_31(field)')}")
    for rid in RECORD_IDS:
        sw = _check_data(reports[rid], "serre-weight")
        ok &= reports[rid].weight == get_record(rid).weight and bool(sw)
    _line(5, ok, "field discriminants: " + " ".join(notes), t0, 1800)


def test_criterion_06_oddness():
    t0 = time.time()
    count = sturm_real_root_count(get_record("k16l29").polynomial)
    discs = _discs()
    negs = [discs[r] < 0 for r in ("k12l31", "k20l31", "k22l31")]
    _line(6, count < 30 and all(negs),
          f"sturm(k16l29) = {count} < 30; ell=31 poly discs negative", t0, 60)


def test_criterion_07_genus1_end_to_end():
    t0 = time.time()
    r300 = build_projective_poly(CURVE_X0_11, bits=300)
    r364 = build_projective_poly(CURVE_X0_11, bits=364)
    ok = (r300.degree == 12 and r300.coeffs == r364.coeffs
          and all(isinstance(c, int) for c in r300.coeffs))
    ok &= charpol_consistency(r300, 200).ok
    full = build_full_poly(CURVE_X0_11)
    psi = division_poly_part(CURVE_X0_11, 11)
    n = psi.degree
    half = [int(c) * 11 ** (n - 1 - d)
            for d, c in enumerate(psi.coeffs[:-1])] + [1]
    ok &= full.degree == 120 and list(full.coeffs) == convolve(half, half)
    _line(7, ok, "mod-11 record rebuilt, 300=364 bits, full matches "
          "division polynomial", t0, 120)


def test_criterion_08_modular_symbols():
    t0 = time.time()
    ok = True
    notes = []
    for k, ell in ((12, 31), (16, 29), (20, 31), (22, 31)):
        exps = sorted({(k - 2) * j % (ell - 1) for j in range(ell - 1)})
        total = sum(build_space(ell, e).cuspidal_dim for e in exps)
        ok &= total == 2 * dim_J_gammaH(k, ell)
        rep = eigensystem_check(k, ell, 20)
        ok &= rep.ok and rep.joint_kernel_dim >= 2
        notes.append(f"({k},{ell}):cusp={total},joint={rep.joint_kernel_dim}")
    _line(8, ok, " ".join(notes), t0, 600)


def test_criterion_09_pgl2_catalog():
    t0 = time.time()
    ok = True
    for ell in (3, 5, 7, 11, 13):
        brute = pgl2_brute_cycle_data(ell)
        catalog = pgl2_cycle_types(ell)
        got = {tuple(c.pattern.parts): c.order for c in catalog.classes}
        ok &= set(brute) == set(got)
        ok &= all(orders == {got[pat]} for pat, orders in brute.items())
    for ell in (11, 13, 17, 19, 29, 31):
        patterns = [c.pattern for c in pgl2_cycle_types(ell).classes]
        ok &= len(patterns) == len(set(patterns))
    _line(9, ok, "catalog = brute force (ell<=13); lookup injective to 31",
          t0, 60)


def test_criterion_10_lehmer_unconditional():
    t0 = time.time()
    conds = DEFAULT_SIEVE.conditions(P_STAR)
    ok = all(conds.values()) and is_prime_strict(P_STAR)
    dets = default_detectors(ells=(11, 31), include_bsgs=True)
    by_key = {(d.ell, d.method): d for d in dets}
    rec11 = by_key[(11, "projective-record")].trace_is_zero(P_STAR)
    bsgs11 = by_key[(11, "elliptic-bsgs")].trace_is_zero(P_STAR)
    rec31 = by_key[(31, "projective-record")].trace_is_zero(P_STAR)
    ok &= rec11 and bsgs11 and rec31 and (rec11 == bsgs11)
    ratio = P_STAR / 22798241520242687999
    ok &= 43.0 <= ratio <= 43.2
    _line(10, ok, f"p* passes congruences; trace 0 mod 31 and mod 11 "
          f"(record & point count agree); ratio {ratio:.2f}", t0, 60)


def _external_records_dir():
    env = os.environ.get("GALREP_EXTERNAL_RECORDS")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[1] / "data" / "external"


def test_criterion_11_lehmer_window_search():
    t0 = time.time()
    where = _external_records_dir()
    extra = {}
    if where.is_dir():
        from galrep.records import load_records_dir

        for rec in load_records_dir(str(where)).values():
            if rec.kind == "projective" and rec.weight == 12:
                extra[rec.ell] = rec
    missing = [e for e in (13, 17, 19) if e not in extra]
    if missing:
        msg = (f"[criterion 11] SKIP external weight-12 projective records "
               f"for ell in {missing} not installed under {where} (set "
               "GALREP_EXTERNAL_RECORDS); those coefficients are published "
               "elsewhere and are not shipped.  The full-range search to "
               "10^21 is the documented long-running mode (see README).")
        print(msg)
        pytest.skip(msg)
    dets = default_detectors(ells=(11, 13, 17, 19, 31), extra_records=extra)
    got = search(P_STAR - 10 ** 15, P_STAR + 1, dets)
    _line(11, got == P_STAR,
          f"window search returned {got}", t0, 1800)


def test_criterion_12_property_suites():
    t0 = time.time()
    ok = True
    # Hecke recursion and multiplicativity to 10^4
    for k in (12, 16, 20, 22):
        form = cusp_form_level1(k, 10 ** 4)
        for n in range(2, 10 ** 4 + 1):
            p = min(f for f, _ in _factor_small(n))
            pe = p
            while n % (pe * p) == 0:
                pe *= p
            if pe < n:
                ok &= form.a(n) == form.a(pe) * form.a(n // pe)
            elif pe > p:
                ok &= form.a(pe) == (form.a(p) * form.a(pe // p)
                                     - p ** (k - 1) * form.a(pe // (p * p)))
            if not ok:
                raise AssertionError(f"hecke failure at k={k}, n={n}")
        # Deligne bound at primes
        for p in primes_below(10 ** 4 + 1):
            assert form.a(p) ** 2 <= 4 * p ** (k - 1), (k, p)
    # partitioned-search determinism
    dets31 = default_detectors(ells=(31,))
    whole = search(0, 2 * 10 ** 15, dets31)
    parts_equal = all(
        search_partitioned(0, 2 * 10 ** 15, dets31, parts=n) == whole
        for n in (2, 3))
    ok &= whole == 1021727768831999 and parts_equal
    # mutation testing: five mutants per record, all must fail
    rng = random.Random(12)
    mutants_failed = 0
    for rid in RECORD_IDS:
        base = get_record(rid)
        for _ in range(5):
            coeffs = list(base.coeffs)
            idx = rng.randrange(0, base.degree)
            coeffs[idx] += rng.choice([-3, -2, -1, 1, 2, 3])
            mutant = GaloisPolyRecord(base.weight, base.ell, base.kind,
                                      tuple(coeffs), source="mutant")
            if not verify_record(mutant).verdict:
                mutants_failed += 1
    ok &= mutants_failed == 20
    _line(12, ok, f"hecke/deligne to 1e4; partition determinism; "
          f"{mutants_failed}/20 mutants rejected", t0, 600)


def _factor_small(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out
