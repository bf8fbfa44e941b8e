"""Balanced metric of the Siegel-Jacobi ball: Kaehler potential, the four
closed-form blocks, their closed-form inverse, determinant, the Siegel-ball
sub-metric with its paired inverse, curvature data, and metric evaluation on
tangent vectors.

Block layout over the coordinates (z_1..z_n, ordered pairs of W):

    h = [[h1, h2],     h1: n x n        h2: n x m     (m = n(n+1)/2)
         [h3, h4]]     h3 = h2*         h4: m x m

with auxiliary data M = (1 - W Wbar)^{-1}, eta = M (z + W zbar), and the
half-weights f_pq = 1 - delta_pq / 2 that absorb the symmetric double
counting.  ``h @ metric_inverse(...).h_inv`` is the literal identity in this
ordered-pair indexing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .domains import JacobiBallPoint, PairIndex, SiegelBallPoint, SiegelUpperPoint, TangentVector
from .errors import DimensionMismatch

__all__ = [
    "MetricParams",
    "AuxMatrices",
    "MetricEval",
    "MetricInverse",
    "DetResult",
    "CurvatureData",
    "compute_aux",
    "kahler_potential",
    "metric_blocks",
    "metric_inverse",
    "metric_det",
    "ball_metric_pair",
    "upper_metric_pair",
    "curvature",
    "ds2_eval",
]


@dataclass(frozen=True)
class MetricParams:
    """Dimension and the two positive weights of the balanced metric."""

    n: int
    k: float
    mu: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not (self.k > 0 and self.mu > 0):
            raise ValueError("weights k and mu must be positive")
        if self.nonintegral_weight:
            warnings.warn(
                "2k is not a non-negative integer; the geometry is well "
                "defined but outside the discrete-series weight range",
                stacklevel=2,
            )

    @property
    def nonintegral_weight(self) -> bool:
        return abs(2 * self.k - round(2 * self.k)) > 1e-9

    @property
    def pair_index(self) -> PairIndex:
        return PairIndex(self.n)

    @property
    def dim(self) -> int:
        return self.pair_index.total_dim


@dataclass(frozen=True)
class AuxMatrices:
    """Shared intermediates of the closed forms at a point (z, W)."""

    N: np.ndarray          # 1 - W Wbar (hermitized)
    M: np.ndarray          # N^{-1}
    X: np.ndarray          # Wbar M = Mbar Wbar, complex symmetric
    eta: np.ndarray        # M (z + W zbar)
    S: np.ndarray          # S_n = sum_q eta_q Nbar_qn
    alpha: float           # eta^t Nbar conj(eta) >= 0
    theta: float           # 1/mu + 2 alpha / k
    f: np.ndarray          # half weights 1 - delta_pq / 2
    e: np.ndarray          # symmetric-derivative weights (1 + delta_pq) / 2


def compute_aux(params: MetricParams, pt: JacobiBallPoint) -> AuxMatrices:
    N = pt.cross_gram()
    M = np.linalg.inv(N)
    M = 0.5 * (M + M.conj().T)
    X = pt.W.conj() @ M
    eta = M @ (pt.z + pt.W @ pt.z.conj())
    Nbar = N.conj()
    S = eta @ Nbar
    alpha = float((eta @ Nbar @ eta.conj()).real)
    n = params.n
    return AuxMatrices(
        N=N, M=M, X=X, eta=eta, S=S, alpha=alpha,
        theta=1.0 / params.mu + 2.0 * alpha / params.k,
        f=np.ones((n, n)) - 0.5 * np.eye(n),
        e=0.5 * (np.ones((n, n)) + np.eye(n)),
    )


def kahler_potential(params: MetricParams, pt: JacobiBallPoint) -> float:
    """f = -(k/2) log det(1 - W Wbar)
          + mu [ zbar^t M z + Re(z^t Wbar M z) ]."""
    aux = compute_aux(params, pt)
    sign, logdet = np.linalg.slogdet(aux.N)
    quad = np.vdot(pt.z, aux.M @ pt.z).real + (pt.z @ aux.X @ pt.z).real
    return -0.5 * params.k * float(logdet) + params.mu * float(quad)


def _fold_pair_metric(M: np.ndarray, idx: PairIndex) -> np.ndarray:
    """Ordered-pair matrix of the quadratic form Tr(M dW Mbar dWbar):
    entry[(p,q),(m,n)] = 2 M_mp M_nq (1-d_pq) + 2 M_mq M_np (1-d_mn)
                         + M_mp^2 d_pq d_mn."""
    out = np.empty((idx.size, idx.size), dtype=complex)
    for i, (p, q) in enumerate(idx.pairs):
        for j, (m, n) in enumerate(idx.pairs):
            if p == q and m == n:
                out[i, j] = M[m, p] ** 2
            elif p == q:
                out[i, j] = 2.0 * M[m, q] * M[n, p]
            elif m == n:
                out[i, j] = 2.0 * M[m, p] * M[n, q]
            else:
                out[i, j] = 2.0 * (M[m, p] * M[n, q] + M[m, q] * M[n, p])
    return out


def _pair_metric_inverse(N: np.ndarray, idx: PairIndex) -> np.ndarray:
    """entry[(m,n),(u,v)] = (N_vn Nbar_mu + N_vm Nbar_nu) / 2."""
    Nb = N.conj()
    out = np.empty((idx.size, idx.size), dtype=complex)
    for i, (m, n) in enumerate(idx.pairs):
        for j, (u, v) in enumerate(idx.pairs):
            out[i, j] = 0.5 * (N[v, n] * Nb[m, u] + N[v, m] * Nb[n, u])
    return out


def ball_metric_pair(W) -> tuple[np.ndarray, np.ndarray]:
    """Siegel-ball pair metric h^k and its inverse k_inv over ordered pairs;
    h^k @ k_inv is the identity."""
    pt = W if isinstance(W, SiegelBallPoint) else SiegelBallPoint(W)
    idx = PairIndex(pt.n)
    N = pt.cross_gram()
    M = np.linalg.inv(N)
    M = 0.5 * (M + M.conj().T)
    return _fold_pair_metric(M, idx), _pair_metric_inverse(N, idx)


def upper_metric_pair(pt: SiegelUpperPoint) -> tuple[np.ndarray, np.ndarray]:
    """Upper-half-plane analogue: the pair form of (1/4) Tr(R^{-1} dV R^{-1}
    dVbar) and its inverse 2(R_vn R_mu + R_vm R_nu)."""
    idx = PairIndex(pt.n)
    R = 0.5 * (pt.R + pt.R.T)
    half_rinv = 0.5 * np.linalg.inv(R)
    return (
        _fold_pair_metric(half_rinv.astype(complex), idx),
        _pair_metric_inverse((2.0 * R).astype(complex), idx),
    )


@dataclass(frozen=True)
class MetricEval:
    h1: np.ndarray
    h2: np.ndarray
    h3: np.ndarray
    h4: np.ndarray
    h: np.ndarray

    @property
    def dim(self) -> int:
        return self.h.shape[0]


def metric_blocks(params: MetricParams, pt: JacobiBallPoint) -> MetricEval:
    """Closed-form blocks of the balanced metric.

    h1_ij      = mu Mbar_ij
    h2_i,pq    = mu (eta_q Mbar_ip + eta_p Mbar_iq) f_pq
    h3         = h2*
    h4_pq,mn   = (k/2) hk_pq,mn + mu hmu_pq,mn with
    hmu_pq,mn  = [etab_p (eta_n Mbar_qm + eta_m Mbar_qn)
                  + etab_q (eta_n Mbar_pm + eta_m Mbar_pn)] f_pq f_mn.
    """
    if params.n != pt.n:
        raise DimensionMismatch("params and point of different dimension")
    idx = params.pair_index
    aux = compute_aux(params, pt)
    Mb = aux.M.conj()
    eta = aux.eta
    etab = eta.conj()
    mu, k = params.mu, params.k

    h1 = mu * Mb

    m = idx.size
    h2 = np.empty((params.n, m), dtype=complex)
    for j, (p, q) in enumerate(idx.pairs):
        f = 0.5 if p == q else 1.0
        h2[:, j] = mu * f * (eta[q] * Mb[:, p] + eta[p] * Mb[:, q])
    h3 = h2.conj().T

    hk = _fold_pair_metric(aux.M, idx)
    hmu = np.empty((m, m), dtype=complex)
    for i, (p, q) in enumerate(idx.pairs):
        fpq = 0.5 if p == q else 1.0
        for j, (mm, nn) in enumerate(idx.pairs):
            fmn = 0.5 if mm == nn else 1.0
            hmu[i, j] = (
                fpq
                * fmn
                * (
                    etab[p] * (eta[nn] * Mb[q, mm] + eta[mm] * Mb[q, nn])
                    + etab[q] * (eta[nn] * Mb[p, mm] + eta[mm] * Mb[p, nn])
                )
            )
    h4 = 0.5 * k * hk + mu * hmu

    h = np.block([[h1, h2], [h3, h4]])
    return MetricEval(h1=h1, h2=h2, h3=h3, h4=h4, h=h)


@dataclass(frozen=True)
class MetricInverse:
    h1: np.ndarray
    h2: np.ndarray
    h3: np.ndarray
    h4: np.ndarray
    h_inv: np.ndarray


def metric_inverse(params: MetricParams, pt: JacobiBallPoint) -> MetricInverse:
    """Closed-form inverse blocks.

    hinv1_ij    = (1/mu + alpha/k) Nbar_ij + Sbar_i S_j / k
    hinv2_i,mn  = -(S_n Nbar_im + S_m Nbar_in) / k
    hinv3       = hinv2*
    hinv4_pq,mn = (Nbar_qn Nbar_pm + Nbar_pn Nbar_qm) / k

    The rank-one term in hinv1 comes from hinv2 @ h3 =
    -(mu/k)(alpha delta_ik + Sbar_i eta_k); for n = 1 it collapses into the
    scalar and hinv1 reduces to (1/mu + 2 alpha/k) Nbar = theta Nbar.
    """
    if params.n != pt.n:
        raise DimensionMismatch("params and point of different dimension")
    idx = params.pair_index
    aux = compute_aux(params, pt)
    Nb = aux.N.conj()
    S = aux.S
    k = params.k

    i1 = (1.0 / params.mu + aux.alpha / k) * Nb + np.outer(S.conj(), S) / k

    m = idx.size
    i2 = np.empty((params.n, m), dtype=complex)
    for j, (mm, nn) in enumerate(idx.pairs):
        i2[:, j] = -(S[nn] * Nb[:, mm] + S[mm] * Nb[:, nn]) / k
    i3 = i2.conj().T

    i4 = np.empty((m, m), dtype=complex)
    for i, (p, q) in enumerate(idx.pairs):
        for j, (mm, nn) in enumerate(idx.pairs):
            i4[i, j] = (Nb[q, nn] * Nb[p, mm] + Nb[p, nn] * Nb[q, mm]) / k

    h_inv = np.block([[i1.astype(complex), i2], [i3, i4]])
    return MetricInverse(h1=i1, h2=i2, h3=i3, h4=i4, h_inv=h_inv)


@dataclass(frozen=True)
class DetResult:
    value: float        # determinant of the assembled matrix
    closed_form: float  # C(n) (k/2)^{n(n+1)/2} mu^n det(N)^{-(n+2)}
    constant_C: float   # 2^{n(n-1)/2}


def metric_det(params: MetricParams, pt: JacobiBallPoint) -> DetResult:
    ev = metric_blocks(params, pt)
    det = np.linalg.det(ev.h)
    value = float(det.real)
    n = params.n
    sign, logdet_n = np.linalg.slogdet(compute_aux(params, pt).N)
    const = 2.0 ** (n * (n - 1) // 2)
    closed = (
        const
        * (0.5 * params.k) ** (n * (n + 1) / 2.0)
        * params.mu**n
        * float(np.exp(-(n + 2) * logdet_n))
    )
    return DetResult(value=value, closed_form=closed, constant_C=const)


@dataclass(frozen=True)
class CurvatureData:
    ric: np.ndarray
    scalar_curvature: float
    qk_lu: np.ndarray


def curvature(params: MetricParams, pt: JacobiBallPoint) -> CurvatureData:
    """Ricci matrix (nonzero only on the W block, equal to -(n+2) h^k),
    the constant scalar curvature -(2/k) n(n+1)(n+2)/2 and the Q.-K. Lu
    matrix ((n+1)(n+2)/2) h - Ric."""
    n = params.n
    idx = params.pair_index
    hk, _ = ball_metric_pair(pt.ball)
    d = idx.total_dim
    ric = np.zeros((d, d), dtype=complex)
    ric[n:, n:] = -(n + 2) * hk
    scalar = -(2.0 / params.k) * n * (n + 1) * (n + 2) / 2.0
    ev = metric_blocks(params, pt)
    qk = ((n + 1) * (n + 2) / 2.0) * ev.h - ric
    return CurvatureData(ric=ric, scalar_curvature=scalar, qk_lu=qk)


def _quad_form(h: np.ndarray, t: np.ndarray) -> float:
    val = t @ h @ t.conj()
    return float(val.real)


def ds2_eval(domain: str, params: MetricParams, pt, tangent: TangentVector) -> float:
    """Squared length of a tangent vector.

    upper:       Tr(R^{-1} dV R^{-1} dVbar)
    ball:        4 Tr(M dW Mbar dWbar)
    jacobi_ball: quadratic form of the assembled metric on (dz, dW-pairs)
    """
    if tangent.n != pt.n:
        raise DimensionMismatch("tangent and point of different dimension")
    if domain == "upper":
        R = 0.5 * (pt.R + pt.R.T)
        Rinv = np.linalg.inv(R)
        dV = tangent.dW
        return float(np.trace(Rinv @ dV @ Rinv @ dV.conj()).real)
    if domain == "ball":
        N = pt.cross_gram()
        M = np.linalg.inv(N)
        dW = tangent.dW
        return float(4.0 * np.trace(M @ dW @ M.conj() @ dW.conj()).real)
    if domain == "jacobi_ball":
        ev = metric_blocks(params, pt)
        return _quad_form(ev.h, tangent.flatten(params.pair_index))
    raise ValueError(f"unknown domain {domain!r}")
