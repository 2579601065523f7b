import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slicelab.clifford import CliffordNumber, CliffordVector, gp, make_frame, standard_frame
from slicelab.errors import InputError, NonVanishingRealPart, NotInSliceCone, NotSlicePreserving
from slicelab.growth import koebe_generator
from slicelab.sampling import random_frame, random_orthogonal
from slicelab.slices import (
    SliceMapping,
    SlicePoint,
    decompose,
    extreme_values,
    induce,
    phi,
    phi_value,
    sign_frame_values,
    slice_preservation_check,
    stem_from_slice_samples,
    transfer_representation,
)
from slicelab.stems import (
    CauchyFueterKernel,
    GroupElement,
    HolomorphicLift,
    StemPoint,
    act,
    constant_stem,
    eval_stem,
    square_lift,
    swap_stem,
)
from slicelab.dirac import fueter_transform


def e(m, *idx):
    return CliffordNumber.blade(m, *idx)


X1234 = StemPoint([1.0], [2.0], [3.0], [4.0])


class TestPhiAndDecompose:
    def test_phi_examples(self):
        fr = standard_frame(2)
        got = phi(fr, X1234)[0]
        assert got == CliffordNumber(2, np.array([1.0, 2.0, 3.0, 4.0]))
        real = phi(fr, StemPoint([5.0, -1.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]))
        assert np.array_equal(real.coeffs[:, 0], [5.0, -1.0]) and not np.any(real.coeffs[:, 1:])

    def test_phi_intertwines_group_action(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            fr = random_frame(3, rng)
            q = random_orthogonal(rng, proper=True)
            x = StemPoint.from_array(rng.standard_normal((4, 2)))
            lhs = phi(fr, act(GroupElement(q), x))
            rhs = phi(fr.rotated(q), x)
            assert lhs.allclose(rhs, 1e-12)

    def test_decompose_single_coordinate(self):
        q = decompose(X1234, standard_frame(2))
        assert q.x0.tolist() == [1.0]
        assert q.r[0] == pytest.approx(math.sqrt(29), abs=1e-12)
        want_H = (2 * e(2, 1) + 3 * e(2, 2) + 4 * e(2, 1, 2)) / math.sqrt(29)
        assert q.H.allclose(want_H, 1e-12)
        assert q.embed().allclose(phi(standard_frame(2), X1234), 1e-12)

    def test_decompose_two_coordinates(self):
        x = StemPoint([0.0, 0.0], [1.0, 2.0], [2.0, 4.0], [0.0, 0.0])
        q = decompose(x, standard_frame(2))
        assert np.allclose(q.r, [math.sqrt(5), 2 * math.sqrt(5)], atol=1e-12)
        assert q.H.allclose((e(2, 1) + 2 * e(2, 2)) / math.sqrt(5), 1e-12)

    def test_decompose_rejects_rank_two(self):
        with pytest.raises(NotInSliceCone):
            decompose(StemPoint([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 0.0]), standard_frame(2))

    def test_canonical_sign(self):
        q = SlicePoint([0.0], [-2.0], e(2, 1))
        assert q.r.tolist() == [2.0] and q.H == -e(2, 1)
        assert SlicePoint([1.0], [0.0], None, 2).H is None
        with pytest.raises(InputError):
            SlicePoint([1.0], [1.0], None, 2)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 3))
    def test_reconstruction(self, seed, n):
        rng = np.random.default_rng(seed)
        fr = random_frame(3, rng)
        u = rng.standard_normal(3)
        x0, r = rng.standard_normal(n), rng.standard_normal(n)
        x = StemPoint(x0, u[0] * r, u[1] * r, u[2] * r)
        q = decompose(x, fr)
        assert q.embed().allclose(phi(fr, x), 1e-12)
        assert q.norm() == pytest.approx(phi(fr, x).norm(), abs=1e-12)


class TestInduce:
    def test_square_lift_matches_geometric_square(self):
        q = decompose(X1234, standard_frame(2))
        got = induce(square_lift(2, 1), q)[0]
        base = CliffordNumber(2, np.array([1.0, 2.0, 3.0, 4.0]))
        assert got.allclose(gp(base, base), 1e-12)
        assert got.allclose(CliffordNumber(2, np.array([-28.0, 4.0, 6.0, 8.0])), 1e-12)

    def test_real_points(self):
        q = SlicePoint([3.0], [0.0], None, 2)
        assert induce(square_lift(2, 1), q)[0] == CliffordNumber.scalar(2, 9.0)
        c = e(2, 2)
        assert induce(constant_stem(2, 1, c), q)[0] == c

    def test_non_equivariant_stem_detected_at_real_points(self):
        with pytest.raises(NonVanishingRealPart):
            induce(swap_stem(2), SlicePoint([1.0], [0.0], None, 2))

    @pytest.mark.parametrize("m,n", [(2, 1), (2, 2), (3, 1), (3, 2)])
    def test_well_defined_across_frames(self, m, n):
        rng = np.random.default_rng(10 * m + n)
        stems = [square_lift(m, n), fueter_transform([[0, 0, 0, 1]] * n, m, n), CauchyFueterKernel(m, n)]
        for F in stems:
            for _ in range(10):
                x0, r = F.domain.sample_slice(rng, n)
                u = rng.standard_normal(3)
                u /= np.linalg.norm(u)
                x = StemPoint(x0, r * u[0], r * u[1], r * u[2])
                for _ in range(3):
                    fr = random_frame(m, rng)
                    assert induce(F, decompose(x, fr)).allclose(phi_value(fr, eval_stem(F, x)), 1e-9)

    def test_slice_mapping_wrapper(self):
        f = SliceMapping(square_lift(2, 1))
        assert f(SlicePoint([2.0], [0.0], None, 2))[0] == CliffordNumber.scalar(2, 4.0)


class TestRepresentation:
    def test_round_trip_recovers_stem(self):
        fr = standard_frame(2)
        F = square_lift(2, 1)
        got = stem_from_slice_samples(sign_frame_values(F, X1234, fr), fr)
        assert np.allclose(got.data[:, 0, 0], [-28.0, 4.0, 6.0, 8.0], atol=1e-12)

    def test_inverse_matrix_is_exact_on_integer_data(self):
        fr = standard_frame(2)
        F = HolomorphicLift(2, 1, [[1, -2, 0, 3]])
        vals = [phi_value(s, eval_stem(F, X1234)) for s in fr.sign_frames()]
        assert stem_from_slice_samples(vals, fr) == eval_stem(F, X1234)

    def test_transfer_to_other_frame(self):
        F = square_lift(3, 1)
        src = standard_frame(3)
        tgt = make_frame((e(3, 1) + e(3, 2)) / math.sqrt(2), e(3, 3))
        got = transfer_representation(sign_frame_values(F, X1234, src), src, tgt)
        assert got.allclose(induce(F, decompose(X1234, tgt)), 1e-9)

    def test_transfer_to_same_frame_and_constants(self):
        rng = np.random.default_rng(4)
        fr = random_frame(3, rng)
        F = HolomorphicLift(3, 1, [[1.0, 0.0, -1.0, 2.0]])
        vals = sign_frame_values(F, X1234, fr)
        assert transfer_representation(vals, fr, fr).allclose(vals[0], 1e-12)
        C = constant_stem(3, 1, 1.5)
        cv = sign_frame_values(C, X1234, fr)
        assert transfer_representation(cv, fr, random_frame(3, rng))[0] == CliffordNumber.scalar(3, 1.5)

    def test_recovery_is_linear(self):
        fr = standard_frame(2)
        F, G = square_lift(2, 1), HolomorphicLift(2, 1, [[0, 1, 0, 1]])
        a, b = 2.0, -3.0
        lhs = stem_from_slice_samples(sign_frame_values(a * F + b * G, X1234, fr), fr)
        rhs = stem_from_slice_samples(sign_frame_values(F, X1234, fr), fr) * a + stem_from_slice_samples(sign_frame_values(G, X1234, fr), fr) * b
        assert lhs.allclose(rhs, 1e-12)


class TestExtremeValues:
    def test_slice_preservation(self):
        I = e(3, 1)
        assert slice_preservation_check(square_lift(3, 1), I)
        assert not slice_preservation_check(constant_stem(3, 1, e(3, 2)), I)
        assert slice_preservation_check(constant_stem(3, 1, 0.0), I)

    def test_square_lift_value_thirty(self):
        fr = standard_frame(2)
        hi, lo, rep = extreme_values(square_lift(2, 1), e(2, 1), X1234, fr)
        assert hi == pytest.approx(30.0, abs=1e-12) and lo == pytest.approx(30.0, abs=1e-12)
        assert rep.passed
        assert induce(square_lift(2, 1), decompose(X1234, fr)).norm() == pytest.approx(30.0, abs=1e-12)

    def test_koebe_values(self):
        F = koebe_generator(1).lift(3)
        fr = standard_frame(3)
        hi, lo, rep = extreme_values(F, e(3, 1), StemPoint([0.5], [0.0], [0.0], [0.0]), fr)
        assert (hi, lo) == pytest.approx((2.0, 2.0), abs=1e-12)
        hi, lo, rep = extreme_values(F, e(3, 1), StemPoint([0.0], [0.5], [0.0], [0.0]), fr)
        assert (hi, lo) == pytest.approx((0.4, 0.4), abs=1e-12)
        assert rep.passed and rep.sampled_min == pytest.approx(0.4, abs=1e-12)

    def test_non_preserving_rejected(self):
        with pytest.raises(NotSlicePreserving):
            extreme_values(constant_stem(3, 1, e(3, 2)), e(3, 1), X1234, standard_frame(3))

    def test_sampled_values_within_bounds_for_lifts(self):
        rng = np.random.default_rng(2)
        F = HolomorphicLift(3, 2, [[0.0, 1.0, 0.5], [1.0, -1.0, 0.0, 0.3]])
        for _ in range(5):
            fr = random_frame(3, rng)
            u = rng.standard_normal(3)
            r = rng.standard_normal(2)
            x = StemPoint(rng.standard_normal(2), u[0] * r, u[1] * r, u[2] * r)
            _, _, rep = extreme_values(F, fr.I, x, fr, verify_samples=50, seed=rng)
            assert rep.passed

    def test_vector_norm(self):
        v = CliffordVector.from_real(2, [3.0, 4.0])
        assert v.norm() == 5.0
