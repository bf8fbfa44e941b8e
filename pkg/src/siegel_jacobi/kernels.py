"""Reproducing kernel, normalized Bergman kernel, Berezin kernel, Calabi
diastasis, the epsilon-function witness of balancedness, volume densities,
the normalization constant, and the n = 1 Parseval quadrature check.

Scalar products are antilinear in the first argument: (x, A y) = xbar^t A y.
Fractional determinant powers use the principal logarithm with continuity
tracking along t -> det(1 - t W Vbar), t in [0, 1]; a path whose continuous
argument leaves (-pi, pi) is reported as BranchAmbiguity rather than being
assigned a branch silently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, roots_legendre

from .domains import JacobiBallPoint
from .errors import BranchAmbiguity, GammaPoleError, NotConverged
from .metric import MetricParams, kahler_potential

__all__ = [
    "KernelEval",
    "VolumeData",
    "QuadratureSpec",
    "two_point_kernel",
    "normalized_kernels",
    "kernel_eval",
    "epsilon_function",
    "volume_densities",
    "normalization_constant",
    "parseval_check_n1",
]

_MAX_PATH_STEPS = 4096


def _tracked_logdet(W: np.ndarray, Vbar: np.ndarray) -> complex:
    """log det(1 - W Vbar) with the argument tracked continuously from the
    identity (t = 0) to t = 1; raises BranchAmbiguity if the running
    argument crosses +-pi."""
    n = W.shape[0]
    eye = np.eye(n)
    steps = 8
    while True:
        ts = np.linspace(0.0, 1.0, steps + 1)
        dets = np.array([np.linalg.det(eye - t * (W @ Vbar)) for t in ts])
        if np.any(dets == 0):
            raise BranchAmbiguity("det(1 - t W Vbar) vanishes on the path")
        increments = np.angle(dets[1:] / dets[:-1])
        if np.max(np.abs(increments)) < 0.5 * np.pi or steps >= _MAX_PATH_STEPS:
            break
        steps *= 2
    arg = 0.0
    for inc in increments:
        arg += float(inc)
        if abs(arg) > np.pi:
            raise BranchAmbiguity(
                f"continuous argument reached {arg:.4f}; det(1 - W Vbar) "
                "crossed the negative real axis"
            )
    return complex(np.log(abs(dets[-1])), arg)


def _two_point_exponent(x, V, y, W) -> complex:
    """F with 2F = 2 (x, U y) + (V ybar, U y) + (x, U W xbar),
    U = (1 - W Vbar)^{-1}."""
    U = np.linalg.inv(np.eye(W.shape[0]) - W @ V.conj())
    two_f = (
        2.0 * np.vdot(x, U @ y)
        + y @ V.conj() @ U @ y
        + np.vdot(x, U @ W @ x.conj())
    )
    return 0.5 * complex(two_f)


@dataclass(frozen=True)
class KernelEval:
    F: complex
    K: complex
    U: np.ndarray
    kappa: complex
    berezin: float
    diastasis: float
    epsilon: float


def two_point_kernel(
    params: MetricParams, zeta: JacobiBallPoint, zeta2: JacobiBallPoint
) -> tuple[complex, complex]:
    """(F, K) with K = det(U)^{k/2} exp(mu F)."""
    x, V = zeta.z, zeta.W
    y, W = zeta2.z, zeta2.W
    F = _two_point_exponent(x, V, y, W)
    log_det_u = -_tracked_logdet(W, V.conj())
    K = np.exp(0.5 * params.k * log_det_u + params.mu * F)
    return F, complex(K)


def _log_ball_kappa(params: MetricParams, V: np.ndarray, W: np.ndarray) -> complex:
    """log of det^{k/2}[(1 - V Vbar)(1 - W Wbar) / (1 - W Vbar)^2]."""
    n = V.shape[0]
    eye = np.eye(n)
    _, ld_v = np.linalg.slogdet(eye - V @ V.conj())
    _, ld_w = np.linalg.slogdet(eye - W @ W.conj())
    ld_mixed = _tracked_logdet(W, V.conj())
    return 0.5 * params.k * (ld_v + ld_w - 2.0 * ld_mixed)


def normalized_kernels(
    params: MetricParams, zeta: JacobiBallPoint, zeta2: JacobiBallPoint
) -> tuple[complex, float, float]:
    """(kappa, berezin, diastasis):

    kappa = kappa_ball(V, W) exp mu [2 F(z,z') - F(z) - F(z')]
    b     = |kappa|^2 in (0, 1], 1 iff the points coincide
    D     = -ln b >= 0, symmetric in its arguments.
    """
    F12 = _two_point_exponent(zeta.z, zeta.W, zeta2.z, zeta2.W)
    F1 = _two_point_exponent(zeta.z, zeta.W, zeta.z, zeta.W)
    F2 = _two_point_exponent(zeta2.z, zeta2.W, zeta2.z, zeta2.W)
    log_kappa = _log_ball_kappa(params, zeta.W, zeta2.W) + params.mu * (
        2.0 * F12 - F1 - F2
    )
    kappa = complex(np.exp(log_kappa))
    berezin = float(np.exp(2.0 * log_kappa.real))
    diastasis = float(-2.0 * log_kappa.real)
    return kappa, berezin, diastasis


def epsilon_function(params: MetricParams, pt: JacobiBallPoint) -> float:
    """exp(-f) K(z, z); identically 1 exactly because the metric is balanced
    (f = ln K on the diagonal).  Evaluated in log space for stability."""
    F = _two_point_exponent(pt.z, pt.W, pt.z, pt.W)
    _, logdet_n = np.linalg.slogdet(pt.cross_gram())
    log_k = -0.5 * params.k * logdet_n + params.mu * F.real
    f = kahler_potential(params, pt)
    return float(np.exp(log_k - f))


def kernel_eval(
    params: MetricParams, zeta: JacobiBallPoint, zeta2: JacobiBallPoint | None = None
) -> KernelEval:
    """Bundle of all two-point quantities (diagonal when zeta2 is omitted)."""
    other = zeta if zeta2 is None else zeta2
    F, K = two_point_kernel(params, zeta, other)
    kappa, berezin, diastasis = normalized_kernels(params, zeta, other)
    U = np.linalg.inv(np.eye(zeta.n) - other.W @ zeta.W.conj())
    eps = epsilon_function(params, zeta)
    return KernelEval(
        F=F, K=K, U=U, kappa=kappa, berezin=berezin, diastasis=diastasis, epsilon=eps
    )


@dataclass(frozen=True)
class VolumeData:
    Q_ball: float      # det(1 - W Wbar)^{-(n+1)}
    Q_jacobi: float    # det(1 - W Wbar)^{-(n+2)}
    Lambda_n: float | None = None


def volume_densities(n: int, pt) -> VolumeData:
    sign, logdet = np.linalg.slogdet(pt.cross_gram())
    return VolumeData(
        Q_ball=float(np.exp(-(n + 1) * logdet)),
        Q_jacobi=float(np.exp(-(n + 2) * logdet)),
    )


def normalization_constant(params: MetricParams) -> float:
    """Lambda_n = mu^n (k-3) / (2 pi^{n(n+3)/2})
                  prod_{i=1}^{n-1} ((k-3)/2 - n + i) Gamma(k+i-2)
                                   / Gamma(k + 2(i-n-1)).

    Requires k > 3 (norm integrability) and every Gamma argument positive.
    """
    n, k, mu = params.n, params.k, params.mu
    if k <= 3:
        raise GammaPoleError(f"k = {k} <= 3: squared norms are not integrable")
    log_prod = 0.0
    sign = 1.0
    for i in range(1, n):
        for arg in (k + i - 2, k + 2 * (i - n - 1)):
            if arg <= 0:
                raise GammaPoleError(f"Gamma argument {arg} <= 0 (i = {i})")
        factor = (k - 3) / 2.0 - n + i
        if factor == 0:
            return 0.0
        sign *= np.sign(factor)
        log_prod += (
            np.log(abs(factor)) + gammaln(k + i - 2) - gammaln(k + 2 * (i - n - 1))
        )
    log_lambda = (
        n * np.log(mu)
        + np.log(k - 3)
        - np.log(2.0)
        - (n * (n + 3) / 2.0) * np.log(np.pi)
        + log_prod
    )
    return float(sign * np.exp(log_lambda))


@dataclass(frozen=True)
class QuadratureSpec:
    """Disk-quadrature resolution.  Radial panels shrink geometrically toward
    the boundary, so the reachable sliver is ~2^-(radial_panels-1) (capped by
    float spacing near 1); its analytic bound ~delta^{(k-3)/2} enters the
    error estimate, so weights close to the k = 3 integrability threshold
    need a looser rtol."""

    radial_panels: int = 48
    radial_order: int = 16
    angular_points: int = 16
    rtol: float = 1e-6


def parseval_check_n1(k: float, mu: float, spec: QuadratureSpec | None = None) -> float:
    """Norm of the constant function in the weighted Bergman space for n = 1:

        Lambda_1 * Integral_{C x D_1} Q K^{-1} dRe z dIm z dRe w dIm w.

    The z-integral is a 2D Gaussian exp(-mu [x y] Q2 [x y]^t) with
    w-dependent covariance and is done analytically (pi / (mu sqrt(det Q2)));
    the disk integral uses panel-adaptive Gauss-Legendre in u = r^2 and a
    trapezoid average in angle.  Expected value 1.
    """
    spec = spec or QuadratureSpec()
    lam = normalization_constant(MetricParams(n=1, k=k, mu=mu))

    phis = np.linspace(0.0, 2.0 * np.pi, spec.angular_points, endpoint=False)

    def ring_integrand(u: float) -> float:
        # average over angle of Lambda_1 * Q * K^{-1} after the z-integral
        total = 0.0
        for phi in phis:
            w = np.sqrt(u) * np.exp(1j * phi)
            a, b = w.real, w.imag
            P = 1.0 - u
            # completed square of 2F = (2|z|^2 + z^2 wbar + zbar^2 w)/P
            q2 = np.array([[1.0 + a, b], [b, 1.0 - a]]) / P
            det_q2 = float(np.linalg.det(q2))
            gaussian = np.pi / (mu * np.sqrt(det_q2))
            total += gaussian * P ** (0.5 * k - 3.0)
        return total / len(phis)

    nodes, weights = roots_legendre(spec.radial_order)
    nodes_lo, weights_lo = roots_legendre(spec.radial_order // 2)

    # geometric panels accumulating toward the boundary u = 1; the final
    # sliver [1 - delta, 1) is bounded analytically via P^{(k-5)/2}
    panels = min(spec.radial_panels, 48)  # 1 - 0.5^47 is still < 1 in floats
    edges = [0.0] + [1.0 - 0.5**j for j in range(1, panels)]
    value = 0.0
    err_est = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        hi_sum = sum(
            w * ring_integrand(mid + half * x) for x, w in zip(nodes, weights)
        )
        lo_sum = sum(
            w * ring_integrand(mid + half * x) for x, w in zip(nodes_lo, weights_lo)
        )
        value += half * hi_sum
        err_est += half * abs(hi_sum - lo_sum)
    delta = 1.0 - edges[-1]
    err_est += (np.pi / mu) * delta ** (0.5 * (k - 3.0)) * 2.0 / (k - 3.0)
    value *= 0.5  # dA = r dr dphi = du dphi / 2
    err_est *= 0.5

    result = lam * 2.0 * np.pi * value
    if err_est * lam * 2.0 * np.pi > spec.rtol * max(1.0, abs(result)):
        raise NotConverged(
            f"quadrature error estimate {err_est:.3e} exceeds rtol {spec.rtol:.1e}"
        )
    return float(result)
