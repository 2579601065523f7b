"""Growth-bound checks.

The extremal mappings are holomorphic lifts of the classical one-variable
extremal functions (Koebe, k-fold Koebe, half-plane map).  Each is slice
preserving and normalized with a starlike (or convex) restriction, which
are the hypotheses the bounds rely on.
"""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slicelab.clifford import CliffordNumber
from slicelab.errors import BisectionFailed, HypothesisViolated, InputError, SingularJacobian
from slicelab.growth import (
    Ball,
    CustomRadial,
    HoloRestriction,
    WeightedEllipsoid,
    convex_bounds,
    convex_criterion,
    covering_minimum,
    gauge_eval,
    gauge_of_value,
    growth_bounds_convex,
    growth_bounds_kfold,
    growth_bounds_starlike,
    halfplane_generator,
    homogeneity_check,
    identity_map,
    kfold_bounds,
    kfold_check,
    koebe_generator,
    restriction_of,
    scaled_generator,
    scan_ray,
    starlike_bounds,
    starlike_criterion,
    starlike_ratio,
)
from slicelab.slices import SlicePoint, induce
from slicelab.stems import HolomorphicLift, constant_stem, square_lift

M = 3
I1 = CliffordNumber.blade(M, 1)


def e(*idx):
    return CliffordNumber.blade(M, *idx)


class TestGauges:
    def test_ball_examples(self):
        assert gauge_eval(Ball(), SlicePoint([0.0], [0.0], None, M)) == 0.0
        for H in (e(1), e(2), (e(1) + e(1, 2)) / math.sqrt(2)):
            assert gauge_eval(Ball(), SlicePoint([0.3], [0.4], H)) == pytest.approx(0.5, abs=1e-15)

    def test_ellipsoid_formula(self):
        g = WeightedEllipsoid((1.0, 2.0))
        q = SlicePoint([0.3, 1.0], [0.4, 0.0], e(2))
        assert gauge_eval(g, q) == pytest.approx(math.sqrt(0.25 + 0.25), abs=1e-15)
        with pytest.raises(InputError):
            WeightedEllipsoid((1.0, 0.0))

    def test_custom_radial_matches_ball(self):
        g = CustomRadial(lambda z: np.linalg.norm(z) < 1.0, n=2)
        rng = np.random.default_rng(0)
        for _ in range(100):
            z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            assert g(z) == pytest.approx(Ball()(z), abs=1e-6)

    def test_custom_radial_polydisc(self):
        g = CustomRadial(lambda z: np.abs(z).max() < 1.0, n=2)
        assert g(np.array([0.3 + 0.4j, 0.2])) == pytest.approx(0.5, abs=1e-9)

    def test_bisection_failures(self):
        with pytest.raises(BisectionFailed):
            CustomRadial(lambda z: False, n=1)(np.array([1.0 + 0j]))
        with pytest.raises(BisectionFailed):
            CustomRadial(lambda z: True, n=1)(np.array([1.0 + 0j]))
        # an annulus is not starlike about the origin
        with pytest.raises(BisectionFailed):
            CustomRadial(lambda z: 0.5 < abs(z[0]) < 1.0 or abs(z[0]) < 0.1, n=1)(np.array([0.7 + 0j]))

    def test_homogeneity(self):
        assert homogeneity_check(Ball()).passed
        rep = homogeneity_check(WeightedEllipsoid((1.0, 2.0)), tol=1e-12)
        assert rep.passed
        broken = lambda q: gauge_eval(Ball(), q) + 0.1
        rep = homogeneity_check(broken)
        assert not rep.passed and rep.witness["q"] == "0"

    def test_homogeneity_catches_slice_dependence(self):
        def by_unit(q):
            base = gauge_eval(Ball(), q)
            return base * (1.0 if q.H is None else 1.0 + 0.1 * abs(q.H.coeffs[1]))

        rep = homogeneity_check(by_unit, n=1)
        assert not rep.passed

    def test_value_gauge_ignores_unit(self):
        v = induce(HolomorphicLift(M, 1, [[0, 1]]), SlicePoint([0.3], [0.4], e(2)))
        assert gauge_of_value(Ball(), v) == pytest.approx(0.5, abs=1e-15)


class TestCriteria:
    def test_starlike_examples(self):
        z = np.array([0.3 + 0.4j])
        assert starlike_criterion(identity_map(), z) == pytest.approx(abs(z[0]) ** 2)
        k = koebe_generator(1)
        assert starlike_ratio(k, 0.5) == pytest.approx(3.0)
        assert starlike_criterion(k, [0.5]) == pytest.approx(0.25 / 3.0)
        sq = HoloRestriction.from_polynomial([[0, 0, 1]])
        assert starlike_ratio(sq, 0.5) == pytest.approx(2.0)

    def test_singular_jacobian(self):
        with pytest.raises(SingularJacobian):
            starlike_criterion(HoloRestriction.from_polynomial([[0, 0, 1]]), [0.0])

    def test_kfold_examples(self):
        assert kfold_check(HoloRestriction.from_polynomial([[0, 1, 3, 0, 2]]), 1)
        assert kfold_check(koebe_generator(2), 2, tol=1e-12)
        assert not kfold_check(HoloRestriction.from_polynomial([[0, 1, 1]]), 2)
        with pytest.raises(InputError):
            kfold_check(identity_map(), 0)

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_generated_maps(self, k):
        h = koebe_generator(k)
        assert kfold_check(h, k)
        rng = np.random.default_rng(k)
        for _ in range(200):
            z = 0.999 * math.sqrt(rng.random()) * cmath.exp(2j * math.pi * rng.random())
            if z != 0:
                assert starlike_criterion(h, [z]) > 0

    def test_koebe_closed_forms(self):
        z = 0.3 - 0.2j
        assert koebe_generator(1)([z])[0] == pytest.approx(z / (1 - z) ** 2)
        assert koebe_generator(2)([z])[0] == pytest.approx(z / (1 - z * z))

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_derivatives_against_difference_quotients(self, k):
        h = koebe_generator(k)
        (fn, dh, d2h), z, s = h.coords[0], 0.2 + 0.3j, 1e-6
        assert dh(z) == pytest.approx((fn(z + s) - fn(z - s)) / (2 * s), abs=1e-8)
        assert d2h(z) == pytest.approx((dh(z + s) - dh(z - s)) / (2 * s), abs=1e-7)

    def test_truncation_tail(self):
        h = koebe_generator(1)
        assert h.truncation[0][:5] == [0.0, 1.0, 2.0, 3.0, 4.0]
        tail = sum(j * 0.5**j for j in range(17, 200))
        assert h.tail(0.5) == pytest.approx(tail, rel=1e-9)
        assert koebe_generator(2).truncation[0][:6] == [0.0, 1.0, 0.0, 1.0, 0.0, 1.0]

    def test_convex_criterion(self):
        assert convex_criterion(halfplane_generator(), 0.9j) == pytest.approx((1 + 0.9j * 2 / (1 - 0.9j)).real)
        assert convex_criterion(identity_map(), 0.5) == 1.0
        assert convex_criterion(koebe_generator(1), -0.9) < 0


class TestBoundFormulas:
    def test_ordering_and_monotonicity_exact(self):
        grid = [Fraction(j, 200) for j in range(200)]
        prev = None
        for r in grid:
            lo_s, hi_s = starlike_bounds(r)
            lo_c, hi_c = convex_bounds(r)
            assert lo_s <= lo_c <= r <= hi_c <= hi_s
            if prev is not None:
                assert all(a <= b for a, b in zip(prev, (lo_s, lo_c, hi_c, hi_s)))
            prev = (lo_s, lo_c, hi_c, hi_s)

    def test_kfold_reduces_to_starlike(self):
        for r in np.linspace(0, 0.99, 50):
            assert kfold_bounds(r, 1) == starlike_bounds(r)


class TestGrowthTheorems:
    def test_koebe_worked_points(self):
        F = koebe_generator(1).lift(M)
        rows = scan_ray(F, I1, Ball(), [1.0], 1, eps=0.5)
        r = rows[0]
        assert (r.rho, r.abs_f, r.upper) == pytest.approx((0.5, 2.0, 2.0))
        assert r.lower == pytest.approx(2 / 9) and r.passed
        rows = scan_ray(F, I1, Ball(), [1j], 1, eps=0.5)
        assert rows[0].abs_f == pytest.approx(0.4) and rows[0].passed

    def test_identity_lift(self):
        F = identity_map(1).lift(M)
        rep = growth_bounds_starlike(F, I1, samples=100)
        assert rep.passed and rep.certified
        assert all(r.abs_f == pytest.approx(r.rho, abs=1e-12) for r in rep)
        assert growth_bounds_convex(F, I1, samples=50).passed

    def test_starlike_grid_and_sharpness(self):
        F = koebe_generator(1).lift(M)
        rep = growth_bounds_starlike(F, I1, grid=(20, 12, 3), tol=1e-9)
        assert rep.passed and rep.certified
        ray = [r for r in rep if r.direction_id == 0]
        assert max(abs(r.abs_f - r.upper) for r in ray) <= 1e-9

    def test_kfold_worked_point_and_covering(self):
        F = koebe_generator(2).lift(M)
        row = scan_ray(F, I1, Ball(), [1.0], 1, theorem="kfold", k=2, eps=0.5)[0]
        assert row.abs_f == pytest.approx(0.5 / 0.75) and row.upper == pytest.approx(0.5 / 0.75)
        rep = growth_bounds_kfold(F, I1, 2, samples=100)
        assert rep.passed and rep.covering_ok
        assert rep.covering_min == pytest.approx(0.5, abs=2e-3)

    def test_kfold_one_equals_starlike_rows(self):
        F = koebe_generator(1).lift(M)
        a = growth_bounds_kfold(F, I1, 1, samples=60, seed=3)
        b = growth_bounds_starlike(F, I1, Ball(), samples=60, seed=3)
        assert [r.to_dict() for r in a] == [r.to_dict() for r in b]

    def test_convex_halfplane(self):
        F = halfplane_generator().lift(M)
        row = scan_ray(F, I1, Ball(), [1.0], 1, theorem="convex", eps=0.5)[0]
        assert row.abs_f == pytest.approx(1.0) and row.upper == pytest.approx(1.0)
        row = scan_ray(F, I1, Ball(), [1j], 1, theorem="convex", eps=0.5)[0]
        assert row.abs_f == pytest.approx(0.5 / abs(1 - 0.5j)) and row.lower == pytest.approx(1 / 3)
        rep = growth_bounds_convex(F, I1, grid=(20, 12, 2))
        assert rep.passed and rep.certified

    def test_koebe_violates_convex_bounds_and_is_not_certified(self):
        rep = growth_bounds_convex(koebe_generator(1).lift(M), I1, samples=100)
        assert not rep.certified
        assert not rep.passed

    def test_several_coordinates(self):
        F = koebe_generator(1, n=2).lift(M)
        rep = growth_bounds_starlike(F, I1, grid=(10, 6, 2))
        assert rep.passed and rep.certified
        ray = [r for r in rep if r.direction_id == 0]
        assert max(abs(r.abs_f - r.upper) for r in ray) <= 1e-9

    def test_ellipsoid_gauge(self):
        w = (1.0, 2.0)
        g = WeightedEllipsoid(w)
        F = scaled_generator(koebe_generator(1, 2), w).lift(M)
        rep = growth_bounds_starlike(F, I1, g, samples=200, measure="gauge")
        assert rep.passed and rep.certified
        # the Euclidean modulus can exceed the bound when the gauge is not the ball
        euclid = growth_bounds_starlike(F, I1, g, samples=200, measure="euclidean")
        assert not euclid.passed

    def test_slice_independence_of_rows(self):
        F = koebe_generator(3).lift(M)
        a = growth_bounds_kfold(F, I1, 3, grid=(8, 6, 2), frame_seed=1)
        b = growth_bounds_kfold(F, I1, 3, grid=(8, 6, 2), frame_seed=2)
        for r, s in zip(a, b):
            assert r.passed == s.passed
            assert abs(r.rho - s.rho) <= 1e-9 and abs(r.abs_f - s.abs_f) <= 1e-9

    def test_hypothesis_violations(self):
        with pytest.raises(HypothesisViolated) as info:
            growth_bounds_starlike(square_lift(M, 1), I1, samples=10)
        assert info.value.hypothesis == "normalized"
        with pytest.raises(HypothesisViolated) as info:
            growth_bounds_kfold(koebe_generator(1).lift(M), I1, 2, samples=10)
        assert info.value.hypothesis == "k_fold"

    def test_nonpreserving_map_rejected(self):
        G = HolomorphicLift(M, 1, [[0, 1]]) + constant_stem(M, 1, e(2))
        with pytest.raises(HypothesisViolated) as info:
            growth_bounds_starlike(G, I1, samples=5)
        assert info.value.hypothesis == "slice_preserving"

    def test_numeric_restriction(self):
        F = HolomorphicLift(M, 1, [[0, 1, 0.2]])
        h = restriction_of(F + 0.0 * F, I1)
        assert h.label == "numeric"
        assert h([0.3 + 0.1j])[0] == pytest.approx((0.3 + 0.1j) + 0.2 * (0.3 + 0.1j) ** 2)
        assert h.jacobian([0.3 + 0.1j])[0, 0] == pytest.approx(1 + 0.4 * (0.3 + 0.1j), abs=1e-8)

    def test_scan_ray_edges(self):
        F = koebe_generator(1).lift(M)
        with pytest.raises(InputError):
            scan_ray(F, I1, Ball(), [0.0], 5)
        rows = scan_ray(F, I1, Ball(), [1.0], 1)
        assert len(rows) == 1 and rows[0].radius == pytest.approx(0.98)
        rows = scan_ray(F, I1, Ball(), [1.0], 25)
        assert all(abs(r.abs_f - r.upper) <= 1e-9 for r in rows)

    def test_covering_minimum_matches_closed_form(self):
        for k in (1, 2, 3, 4):
            F = koebe_generator(k).lift(M)
            r = 1 - 1e-3
            want = r / (1 + r**k) ** (2 / k)
            assert covering_minimum(F, 1e-3, 720, seed=k) == pytest.approx(want, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.01, 0.97), st.floats(0, 2 * math.pi), st.integers(1, 4))
def test_kfold_bounds_hold_pointwise(t, theta, k):
    F = koebe_generator(k).lift(M)
    z = t * cmath.exp(1j * theta)
    q = SlicePoint.from_complex([z], (e(1) + e(2)) / math.sqrt(2))
    val = induce(F, q).norm()
    lo, hi = kfold_bounds(t, k)
    assert lo - 1e-9 <= val <= hi + 1e-9
