"""Modular-curve bookkeeping tests.

The dimension formula is validated three independent ways: known
genus values, the requirement that summing over all even characters
reproduces the genus of X_1(l), and (in the acceptance suite) the
rank of the cuspidal modular symbol spaces.  The cycle-type catalog
is validated against brute-force enumeration of PGL2(F_l).
"""

import random
from math import gcd

import pytest

from galrep import modcurve
from galrep.errors import InvalidInput
from galrep.modcurve import InconsistentPattern
from galrep.poly import DegreePattern


class TestGammaH:
    def test_index_values(self):
        assert modcurve.gamma_H(12, 31).index_over_gamma1 == 5
        assert modcurve.gamma_H(16, 29).index_over_gamma1 == 7
        assert modcurve.gamma_H(20, 31).index_over_gamma1 == 3
        assert modcurve.gamma_H(22, 31).index_over_gamma1 == 5
        assert modcurve.gamma_H(12, 11).index_over_gamma1 == 5

    def test_gamma0_flag(self):
        # k = 12, l = 11: gcd(10, 10) = 10 = l - 1, so H is everything.
        assert modcurve.gamma_H(12, 11).is_gamma0
        assert not modcurve.gamma_H(12, 31).is_gamma0

    def test_generator_generates_kernel(self):
        for k, ell in [(12, 31), (16, 29), (20, 31), (22, 31), (12, 11)]:
            spec = modcurve.gamma_H(k, ell)
            sub = set()
            x = 1
            for _ in range(spec.order):
                sub.add(x)
                x = x * spec.generator % ell
            assert len(sub) == spec.order
            assert all(pow(h, k - 2, ell) == 1 for h in sub)
            # and H is the full kernel
            kernel = {u for u in range(1, ell) if pow(u, k - 2, ell) == 1}
            assert sub == kernel
            assert spec.order % 2 == 0 and spec.index_over_gamma1 == spec.order // 2
            assert (ell - 1) % (2 * spec.index_over_gamma1) == 0

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidInput):
            modcurve.gamma_H(13, 31)
        with pytest.raises(InvalidInput):
            modcurve.gamma_H(12, 32)
        with pytest.raises(InvalidInput):
            modcurve.gamma_H(16, 13)  # l < k - 1


class TestGenera:
    def test_known_genus_values(self):
        assert modcurve.genus_X0(11) == 1
        assert modcurve.genus_X0(29) == 2
        assert modcurve.genus_X0(31) == 2
        assert modcurve.genus_X0(13) == 0
        assert modcurve.genus_X0(37) == 2
        assert modcurve.genus_X1(11) == 1
        assert modcurve.genus_X1(13) == 2
        assert modcurve.genus_X1(29) == 22
        assert modcurve.genus_X1(31) == 26

    def test_dim_sum_over_characters_equals_genus_X1(self):
        # Sum of dim S_2(l, omega^e) over even e must be dim S_2(Gamma_1(l)).
        for ell in [11, 13, 17, 19, 23, 29, 31, 41, 53, 97]:
            total = sum(
                modcurve.dim_S2_eps(ell, e) for e in range(0, ell - 1, 2)
            )
            assert total == modcurve.genus_X1(ell), ell

    def test_dim_S2_known_values(self):
        assert modcurve.dim_S2_eps(31, 10) == 2
        assert modcurve.dim_S2_eps(31, 6) == 1
        assert modcurve.dim_S2_eps(29, 14) == 2
        assert modcurve.dim_S2_eps(29, 2) == 2
        assert modcurve.dim_S2_eps(29, 4) == 1

    def test_dim_S2_rejects_odd_exponent(self):
        with pytest.raises(InvalidInput):
            modcurve.dim_S2_eps(31, 7)

    def test_dim_J_gammaH_table(self):
        assert modcurve.dim_J_gammaH(12, 31) == 6
        assert modcurve.dim_J_gammaH(16, 29) == 4
        assert modcurve.dim_J_gammaH(20, 31) == 6
        assert modcurve.dim_J_gammaH(22, 31) == 6
        assert modcurve.dim_J_gammaH(12, 11) == 1


def pgl2_brute_cycle_data(ell):
    """Oracle: enumerate PGL2(F_l), return {pattern: set of orders}."""
    points = [(1, x) for x in range(ell)] + [(0, 1)]
    index = {pt: i for i, pt in enumerate(points)}

    def normalize(c, d):
        c, d = c % ell, d % ell
        if c:
            return (1, d * pow(c, -1, ell) % ell)
        return (0, 1)

    seen = set()
    data = {}
    for a in range(ell):
        for b in range(ell):
            for c in range(ell):
                for d in range(ell):
                    if (a * d - b * c) % ell == 0:
                        continue
                    # scalar-normalize the matrix to dedupe PGL classes
                    first = next(x for x in (a, b, c, d) if x)
                    inv = pow(first, -1, ell)
                    key = tuple(x * inv % ell for x in (a, b, c, d))
                    if key in seen:
                        continue
                    seen.add(key)
                    perm = [
                        index[normalize(a * p + c * q, b * p + d * q)]
                        for (p, q) in points
                    ]
                    # cycle lengths and permutation order
                    visited = [False] * len(points)
                    lengths = []
                    for start in range(len(points)):
                        if visited[start]:
                            continue
                        n, cur = 0, start
                        while not visited[cur]:
                            visited[cur] = True
                            cur = perm[cur]
                            n += 1
                        lengths.append(n)
                    order = 1
                    for ln in lengths:
                        order = order * ln // gcd(order, ln)
                    pat = tuple(sorted(lengths))
                    data.setdefault(pat, set()).add(order)
    return data


class TestCycleCatalog:
    def test_matches_brute_force(self):
        for ell in [3, 5, 7, 11, 13]:
            brute = pgl2_brute_cycle_data(ell)
            catalog = modcurve.pgl2_cycle_types(ell)
            cat_patterns = {tuple(c.pattern.parts): c.order for c in catalog.classes}
            assert set(brute) == set(cat_patterns), ell
            for pat, orders in brute.items():
                assert orders == {cat_patterns[pat]}, (ell, pat)

    def test_injective_for_target_levels(self):
        for ell in [11, 13, 17, 19, 29, 31]:
            catalog = modcurve.pgl2_cycle_types(ell)
            patterns = [c.pattern for c in catalog.classes]
            assert len(patterns) == len(set(patterns)), ell

    def test_lookup_and_errors(self):
        n, kind = modcurve.projective_order_from_pattern(
            DegreePattern([1, 31]), 31
        )
        assert (n, kind) == (31, "unipotent")
        n, kind = modcurve.projective_order_from_pattern(
            DegreePattern([2] * 16), 31
        )
        assert (n, kind) == (2, "nonsplit")
        n, kind = modcurve.projective_order_from_pattern(
            DegreePattern([1, 1] + [2] * 15), 31
        )
        assert (n, kind) == (2, "split")
        # order-32 nonsplit and order-30 split are legitimate types
        assert modcurve.projective_order_from_pattern(
            DegreePattern([32]), 31
        ) == (32, "nonsplit")
        assert modcurve.projective_order_from_pattern(
            DegreePattern([1, 1, 30]), 31
        ) == (30, "split")
        # three fixed points, or no fixed point with mixed lengths,
        # never happen in PGL2
        with pytest.raises(InconsistentPattern):
            modcurve.projective_order_from_pattern(
                DegreePattern([1, 1, 1, 29]), 31
            )
        with pytest.raises(InconsistentPattern):
            modcurve.projective_order_from_pattern(DegreePattern([2, 30]), 31)
        with pytest.raises(InconsistentPattern):
            modcurve.projective_order_from_pattern(DegreePattern([5, 5]), 31)

    def test_kinds_have_expected_fixed_points(self):
        for ell in [11, 13, 29, 31]:
            for c in modcurve.pgl2_cycle_types(ell).classes:
                ones = c.pattern.counts().get(1, 0)
                if c.kind == "identity":
                    assert ones == ell + 1
                elif c.kind == "unipotent":
                    assert ones == 1
                elif c.kind == "split":
                    assert ones == 2
                else:
                    assert ones == 0
