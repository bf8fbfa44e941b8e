import numpy as np
import pytest

from siegel_jacobi.domains import JacobiBallPoint, sample_point
from siegel_jacobi.errors import BranchAmbiguity, GammaPoleError, NotConverged
from siegel_jacobi.kernels import (
    QuadratureSpec,
    epsilon_function,
    kernel_eval,
    normalization_constant,
    normalized_kernels,
    parseval_check_n1,
    two_point_kernel,
    volume_densities,
)
from siegel_jacobi.metric import MetricParams, kahler_potential


def origin(n):
    return JacobiBallPoint(z=np.zeros(n), W=np.zeros((n, n)))


def near_boundary_point(margin, rng):
    """n = 2 point with smallest eigenvalue of 1 - W Wbar equal to margin."""
    phase = np.exp(0.3j)
    W = np.diag([np.sqrt(1.0 - margin) * phase, 0.3])
    z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return JacobiBallPoint(z=z, W=W)


class TestTwoPointKernel:
    def test_double_origin(self):
        _, K = two_point_kernel(MetricParams(n=2, k=2, mu=1), origin(2), origin(2))
        assert K == pytest.approx(1.0)

    def test_zero_ball_parts(self, rng):
        params = MetricParams(n=2, k=2, mu=1.3)
        x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        y = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        Z = np.zeros((2, 2))
        F, K = two_point_kernel(
            params, JacobiBallPoint(z=x, W=Z), JacobiBallPoint(z=y, W=Z)
        )
        assert K == pytest.approx(np.exp(params.mu * np.vdot(x, y)))

    def test_diagonal_w_zero(self, rng):
        params = MetricParams(n=2, k=2, mu=0.7)
        z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        pt = JacobiBallPoint(z=z, W=np.zeros((2, 2)))
        _, K = two_point_kernel(params, pt, pt)
        assert K == pytest.approx(np.exp(params.mu * np.vdot(z, z).real))

    def test_log_matches_potential(self, rng):
        params = MetricParams(n=2, k=3.5, mu=1.2)
        for _ in range(10):
            pt = sample_point("jacobi_ball", 2, rng)
            _, K = two_point_kernel(params, pt, pt)
            assert abs(K.imag) < 1e-12 * abs(K.real)
            assert np.log(K.real) == pytest.approx(
                kahler_potential(params, pt), rel=1e-12, abs=1e-12
            )

    def test_hermitian_symmetry(self, rng):
        params = MetricParams(n=2, k=2.5, mu=1.0)
        p1 = sample_point("jacobi_ball", 2, rng)
        p2 = sample_point("jacobi_ball", 2, rng)
        _, K12 = two_point_kernel(params, p1, p2)
        _, K21 = two_point_kernel(params, p2, p1)
        assert K12 == pytest.approx(np.conj(K21), rel=1e-12)

    def test_branch_crossing_reported(self):
        # three aligned phase factors wind the determinant past -pi
        r2 = 0.97
        psi = np.arccos(r2)
        W = np.sqrt(r2) * np.exp(0.5j * psi) * np.eye(3)
        V = np.sqrt(r2) * np.exp(-0.5j * psi) * np.eye(3)
        pa = JacobiBallPoint(z=np.zeros(3), W=V)
        pb = JacobiBallPoint(z=np.zeros(3), W=W)
        with pytest.raises(BranchAmbiguity):
            two_point_kernel(MetricParams(n=3, k=2, mu=1), pa, pb)


class TestNormalizedKernels:
    def test_diagonal(self, rng):
        params = MetricParams(n=2, k=2, mu=1)
        pt = sample_point("jacobi_ball", 2, rng)
        kappa, b, D = normalized_kernels(params, pt, pt)
        assert kappa == pytest.approx(1.0)
        assert b == pytest.approx(1.0)
        assert D == pytest.approx(0.0, abs=1e-12)

    def test_pure_ball_separation(self):
        # D((0,0), (0,r)) = -k ln(1 - r^2)
        k, r = 3.0, 0.6
        params = MetricParams(n=1, k=k, mu=1.0)
        _, _, D = normalized_kernels(
            params, origin(1), JacobiBallPoint(z=[0.0], W=[[r]])
        )
        assert D == pytest.approx(-k * np.log(1 - r**2))

    def test_swap_symmetric(self, rng):
        params = MetricParams(n=2, k=2, mu=1)
        p1 = sample_point("jacobi_ball", 2, rng)
        p2 = sample_point("jacobi_ball", 2, rng)
        _, b12, d12 = normalized_kernels(params, p1, p2)
        _, b21, d21 = normalized_kernels(params, p2, p1)
        assert b12 == pytest.approx(b21, rel=1e-12)
        assert d12 == pytest.approx(d21, rel=1e-12)

    def test_bounds(self, rng):
        params = MetricParams(n=2, k=2, mu=1)
        for _ in range(50):
            p1 = sample_point("jacobi_ball", 2, rng)
            p2 = sample_point("jacobi_ball", 2, rng)
            _, b, D = normalized_kernels(params, p1, p2)
            assert 0 < b < 1 - 1e-12
            assert D > 0


class TestEpsilon:
    def test_origin(self):
        assert epsilon_function(MetricParams(n=2, k=2, mu=1), origin(2)) == pytest.approx(1.0)

    def test_random_points(self, rng):
        params = MetricParams(n=2, k=4.0, mu=1.5)
        for _ in range(20):
            pt = sample_point("jacobi_ball", 2, rng)
            assert abs(epsilon_function(params, pt) - 1.0) < 1e-10

    def test_near_boundary(self, rng):
        params = MetricParams(n=2, k=4.0, mu=1.0)
        pt = near_boundary_point(1e-3, rng)
        assert abs(epsilon_function(params, pt) - 1.0) < 1e-8


class TestVolume:
    def test_w_zero(self):
        data = volume_densities(2, origin(2))
        assert data.Q_ball == 1.0 and data.Q_jacobi == 1.0

    def test_scalar(self):
        data = volume_densities(1, JacobiBallPoint(z=[0.0], W=[[0.5]]))
        assert data.Q_jacobi == pytest.approx(0.75**-3)
        assert data.Q_ball == pytest.approx(0.75**-2)

    def test_densities_at_least_one(self, rng):
        for _ in range(20):
            pt = sample_point("ball", 2, rng)
            data = volume_densities(2, pt)
            assert data.Q_ball >= 1.0 and data.Q_jacobi >= 1.0


class TestNormalizationConstant:
    def test_n1_example(self):
        val = normalization_constant(MetricParams(n=1, k=5, mu=1))
        assert val == pytest.approx(1 / np.pi**2)

    def test_mu_scaling(self):
        v1 = normalization_constant(MetricParams(n=2, k=8, mu=1))
        v2 = normalization_constant(MetricParams(n=2, k=8, mu=2))
        assert v2 == pytest.approx(4 * v1)

    def test_pole_reported(self):
        with pytest.raises(GammaPoleError):
            normalization_constant(MetricParams(n=1, k=3, mu=1))
        with pytest.raises(GammaPoleError):
            normalization_constant(MetricParams(n=2, k=3.5, mu=1))


class TestParseval:
    def test_unit_norm(self):
        for k in (6.0, 10.0):
            assert parseval_check_n1(k, 1.0) == pytest.approx(1.0, abs=0.02)

    def test_mu_stability(self):
        v1 = parseval_check_n1(10.0, 1.0)
        v2 = parseval_check_n1(10.0, 2.0)
        assert abs(v1 - v2) / abs(v1) < 1e-3

    def test_divergent_weight(self):
        with pytest.raises(GammaPoleError):
            parseval_check_n1(3.0, 1.0)

    def test_not_converged_near_threshold(self):
        with pytest.raises(NotConverged):
            parseval_check_n1(3.5, 1.0, QuadratureSpec(rtol=1e-10))


class TestKernelEval:
    def test_bundle_consistency(self, rng):
        params = MetricParams(n=2, k=2.5, mu=1.0)
        p1 = sample_point("jacobi_ball", 2, rng)
        p2 = sample_point("jacobi_ball", 2, rng)
        ev = kernel_eval(params, p1, p2)
        F, K = two_point_kernel(params, p1, p2)
        assert ev.K == K and ev.F == F
        assert ev.berezin == pytest.approx(abs(ev.kappa) ** 2)
        assert ev.diastasis == pytest.approx(-np.log(ev.berezin))
        U = np.linalg.inv(np.eye(2) - p2.W @ p1.W.conj())
        assert np.allclose(ev.U, U)

    def test_diagonal_default(self, rng):
        params = MetricParams(n=1, k=2, mu=1)
        pt = sample_point("jacobi_ball", 1, rng)
        ev = kernel_eval(params, pt)
        assert ev.berezin == pytest.approx(1.0)
        assert ev.epsilon == pytest.approx(1.0)
