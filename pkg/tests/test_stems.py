import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slicelab.clifford import CliffordNumber
from slicelab.dirac import fueter_transform
from slicelab.errors import InputError, NonIntrinsic, OutOfDomain
from slicelab.sampling import random_orthogonal
from slicelab.stems import (
    CauchyFueterKernel,
    DomainBox,
    GroupElement,
    HolomorphicLift,
    PolynomialStem,
    StemPoint,
    StemValue,
    act,
    act_value,
    check_axis_vanishing,
    check_equivariance,
    constant_stem,
    embed,
    eval_stem,
    identity_stem,
    lift_parts,
    planted_stem,
    square_lift,
    swap_stem,
    symmetrize,
)


def equivariant_stems(m, n):
    return {
        "constant": constant_stem(m, n, 2.5),
        "square": square_lift(m, n),
        "lift": HolomorphicLift(m, n, [[1.0, -2.0, 0.5, 3.0]] * n),
        "fueter": fueter_transform([[0, 0, 0, 0, 0, 1]] * n, m, n),
        "kernel": CauchyFueterKernel(m, n),
    }


class TestGroupAction:
    def test_examples(self):
        x = StemPoint([1.0], [2.0], [3.0], [4.0])
        assert act(GroupElement.identity(), x).data.tolist() == x.data.tolist()
        flip = GroupElement(np.diag([-1.0, -1.0, 1.0]))
        assert act(flip, x).data.ravel().tolist() == [1, -2, -3, 4]
        rot = GroupElement(np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]))
        assert act(rot, x).data.ravel().tolist() == [1, -3, 2, 4]

    def test_value_action_examples(self):
        v = StemValue(2, np.arange(16, dtype=float).reshape(4, 1, 4))
        flip = GroupElement(np.diag([-1.0, -1.0, 1.0]))
        w = act_value(flip, v)
        assert np.array_equal(w.data[0], v.data[0]) and np.array_equal(w.data[1], -v.data[1])
        assert np.array_equal(w.data[3], v.data[3])

    def test_group_law(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            q1, q2 = random_orthogonal(rng), random_orthogonal(rng)
            x = StemPoint.from_array(rng.integers(-5, 6, (4, 3)).astype(float))
            lhs = act(GroupElement(q1), act(GroupElement(q2), x)).data
            rhs = act(embed(q1 @ q2), x).data
            assert np.allclose(lhs, rhs, atol=1e-12)
            v = StemValue(2, rng.standard_normal((4, 3, 4)))
            assert act_value(GroupElement(q1), act_value(GroupElement(q2), v)).allclose(act_value(embed(q1 @ q2), v), 1e-12)

    def test_orthogonality_required(self):
        with pytest.raises(InputError):
            GroupElement(np.diag([1.0, 2.0, 1.0]))

    def test_haar_sampler_covers_reflections(self):
        rng = np.random.default_rng(3)
        dets = [np.linalg.det(random_orthogonal(rng)) for _ in range(400)]
        assert 120 < sum(d < 0 for d in dets) < 280
        assert all(abs(abs(d) - 1) < 1e-12 for d in dets)


class TestEvaluation:
    def test_square_lift_worked_point(self):
        v = eval_stem(square_lift(2, 1), StemPoint([1.0], [2.0], [3.0], [4.0]))
        assert v.data[:, 0, 0].tolist() == [-28.0, 4.0, 6.0, 8.0]
        assert not np.any(v.data[:, :, 1:])

    def test_kernel_at_unit_point(self):
        v = eval_stem(CauchyFueterKernel(2, 1), StemPoint([1.0], [0.0], [0.0], [0.0]))
        assert v.data[:, 0, 0].tolist() == [1.0, 0.0, 0.0, 0.0]

    def test_constant_stem(self):
        c = CliffordNumber.blade(3, 2)
        v = eval_stem(constant_stem(3, 2, c), StemPoint([1.0, 2.0], [0.0, 1.0], [3.0, 0.0], [0.0, 0.0]))
        assert np.array_equal(v.data[0], np.tile(c.coeffs, (2, 1)))
        assert not np.any(v.data[1:])

    def test_out_of_domain(self):
        F = square_lift(2, 1, DomainBox.ball(1.0))
        with pytest.raises(OutOfDomain):
            eval_stem(F, StemPoint([1.0], [0.0], [0.0], [0.0]))
        with pytest.raises(OutOfDomain):
            eval_stem(CauchyFueterKernel(2, 1), StemPoint([0.01], [0.0], [0.0], [0.0]))

    def test_lift_parts_against_complex_powers(self):
        # h(x0 + i rho) = alpha + i rho beta~, both polynomials in x0 and rho^2
        coeffs = [0.5, -1.0, 2.0, 0.0, 3.0, -0.25]
        alpha, beta = lift_parts(coeffs)
        for x0, rho in [(0.3, 0.7), (-1.2, 2.0), (0.0, 1.5)]:
            w = sum(c * complex(x0, rho) ** k for k, c in enumerate(coeffs))
            a = sum(c * x0**p * rho ** (2 * q) for (p, q), c in alpha.items())
            b = sum(c * x0**p * rho ** (2 * q) for (p, q), c in beta.items())
            assert a == pytest.approx(w.real, abs=1e-12)
            assert rho * b == pytest.approx(w.imag, abs=1e-12)

    def test_lift_rejects_complex_coefficients(self):
        with pytest.raises(NonIntrinsic):
            HolomorphicLift(2, 1, [[0, 1j]])

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(-3, 3), min_size=1, max_size=6), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
    def test_lift_matches_complex_evaluation(self, coeffs, x0, x1, x2, x3):
        F = HolomorphicLift(2, 1, [coeffs])
        v = eval_stem(F, StemPoint([x0], [x1], [x2], [x3])).data[:, 0, 0]
        rho = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
        w = sum(c * complex(x0, rho) ** k for k, c in enumerate(coeffs))
        scale = 1 + abs(w)
        assert v[0] == pytest.approx(w.real, abs=1e-10 * scale)
        assert math.hypot(*v[1:]) == pytest.approx(abs(w.imag), abs=1e-10 * scale)


class TestEquivariance:
    @pytest.mark.parametrize("n", [1, 2])
    def test_builtin_stems_pass_both_checks(self, n):
        for name, F in equivariant_stems(3, n).items():
            eq = check_equivariance(F, samples=200, tol=1e-9, seed=n)
            ax = check_axis_vanishing(F, samples=200, tol=1e-8, seed=n)
            assert eq.passed, (name, eq.worst_residual)
            assert ax.passed, name

    def test_real_axis_forces_vector_part_zero(self):
        minus = GroupElement(-np.eye(3))
        x = StemPoint([0.7, -1.1], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0])
        for name, F in equivariant_stems(2, 2).items():
            v = eval_stem(F, x)
            assert v.allclose(act_value(minus, v), 1e-12), name
            assert np.abs(v.data[1:]).max() <= 1e-9, name

    def test_swap_stem_fails_with_witness(self):
        rep = check_equivariance(swap_stem(2), samples=50, seed=0)
        assert not rep.passed
        x = StemPoint.from_array(np.array(rep.witness["x"]))
        g = GroupElement(np.array(rep.witness["q"]))
        F = swap_stem(2)
        assert (eval_stem(F, act(g, x)) - act_value(g, eval_stem(F, x))).norm() > 1e-9

    def test_planted_stem_fails_axis_vanishing(self):
        F = planted_stem(2)
        assert not check_equivariance(F, samples=50).passed
        assert not check_axis_vanishing(F, samples=50).passed
        v = eval_stem(F, StemPoint([0.0], [1.0], [0.0], [0.0]))
        assert v.data[2, 0, 0] == 1.0

    def test_combinations_stay_equivariant(self):
        stems = equivariant_stems(2, 1)
        combo = 2.0 * stems["square"] + stems["lift"] - stems["constant"]
        assert check_equivariance(combo, samples=100).passed

    def test_identity_stem_is_equivariant(self):
        assert check_equivariance(identity_stem(2, 2), samples=100).passed


class TestSymmetrize:
    def test_exact_shortcut_for_equivariant_input(self):
        F = square_lift(2, 1)
        S = symmetrize(F, 16)
        assert S.exact
        rng = np.random.default_rng(0)
        for _ in range(20):
            x = StemPoint.from_array(rng.standard_normal((4, 1)))
            assert S(x).allclose(F(x), 1e-9)

    def test_swap_average_vanishes(self):
        S = symmetrize(swap_stem(2), 400, seed=1)
        assert not S.exact
        x = StemPoint([0.3], [1.0], [-0.5], [0.8])
        assert abs(S(x).data[0, 0, 0]) <= 3 / math.sqrt(400)

    def test_symmetrized_output_is_equivariant_up_to_quadrature(self):
        S = symmetrize(swap_stem(2), 64, seed=2)
        rep = check_equivariance(S, samples=20, tol=1.0)
        assert rep.passed

    def test_linearity(self):
        F, G = swap_stem(2), planted_stem(2)
        lhs = symmetrize(2.0 * F + (-3.0) * G, 32, seed=5)
        sF, sG = symmetrize(F, 32, seed=5), symmetrize(G, 32, seed=5)
        rng = np.random.default_rng(1)
        for _ in range(10):
            x = StemPoint.from_array(rng.standard_normal((4, 1)))
            assert lhs(x).allclose(sF(x) * 2.0 + sG(x) * -3.0, 1e-12)

    def test_quadrature_minimum(self):
        with pytest.raises(InputError):
            symmetrize(swap_stem(2), 4)


class TestPolynomialStem:
    def test_partial_and_degree(self):
        F = square_lift(2, 1)
        assert F.degree() == 2
        d0 = F.partial(0)
        v = eval_stem(d0, StemPoint([1.0], [0.0], [0.0], [0.0]))
        assert v.data[:, 0, 0].tolist() == [2.0, 0.0, 0.0, 0.0]
        assert PolynomialStem.zero(2, 1).degree() == -1

    def test_clifford_coefficients(self):
        c = CliffordNumber.blade(2, 1, 2)
        F = PolynomialStem.from_terms(2, 1, [(0, 0, c, [1, 0, 0, 0])])
        v = eval_stem(F, StemPoint([2.0], [0.0], [0.0], [0.0]))
        assert v.data[0, 0].tolist() == [0.0, 0.0, 0.0, 2.0]
