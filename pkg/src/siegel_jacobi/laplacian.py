"""Laplace-Beltrami operators on the ball, the upper half-plane and the
Jacobi ball, the Cayley chain rule for symmetric-matrix derivatives, and the
operator-transport check across the Cayley map.

Convention: a coefficient matrix C acts on a scalar field f as

    (Delta f)(p) = trace(C @ H),   H[a, b] = d^2 f / dz_a dzbar_b,

equivalently sum_{a,b} C[a, b] d^2 f / dzbar_a dz_b.  C is the right inverse
of the domain's metric matrix in ordered-pair coordinates; the orientation is
pinned by the identity Delta(ln G) = (2/k) n(n+1)(n+2)/2, which fails for the
conjugated alternative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .domains import PairIndex, SiegelBallPoint, SiegelUpperPoint
from .errors import DimensionMismatch
from .groups import inverse_partial_cayley, partial_cayley
from .metric import (
    MetricParams,
    ball_metric_pair,
    metric_det,
    metric_inverse,
    upper_metric_pair,
)
from .oracle import FdConfig, fd_wirtinger_gradient, fd_wirtinger_hessian, flatten_point

__all__ = [
    "LaplacianCoefficients",
    "laplacian_coefficients",
    "apply_laplacian",
    "cayley_chain_rule_check",
    "laplacian_correspondence_check",
    "builtin_field",
    "BUILTIN_FIELDS",
]


@dataclass(frozen=True)
class LaplacianCoefficients:
    domain: str
    matrix: np.ndarray  # hermitian positive definite over the domain chart


def laplacian_coefficients(
    domain: str, params: MetricParams | None, pt
) -> LaplacianCoefficients:
    """Coefficient matrix of the Laplace-Beltrami operator.

    ball:        k_inv[(m,n),(u,v)] = (N_vn Nbar_mu + N_vm Nbar_nu) / 2
    upper:       2 (R_vn R_mu + R_vm R_nu)
    jacobi_ball: the assembled closed-form metric inverse (d x d)
    """
    if domain == "ball":
        _, k_inv = ball_metric_pair(pt if isinstance(pt, SiegelBallPoint) else pt.ball)
        return LaplacianCoefficients(domain, k_inv)
    if domain == "upper":
        _, k_inv = upper_metric_pair(pt)
        return LaplacianCoefficients(domain, k_inv)
    if domain == "jacobi_ball":
        if params is None:
            raise ValueError("jacobi_ball coefficients need metric parameters")
        return LaplacianCoefficients(domain, metric_inverse(params, pt).h_inv)
    raise ValueError(f"unknown domain {domain!r}")


def apply_laplacian(
    domain: str,
    params: MetricParams | None,
    f: Callable,
    pt,
    fd_step: float = 1e-4,
) -> complex:
    """Contract the coefficient matrix with the finite-difference Wirtinger
    Hessian of f.  The callback receives perturbed points of the same type
    as pt; symmetric-matrix coordinates are perturbed jointly."""
    coeff = laplacian_coefficients(domain, params, pt)
    hess = fd_wirtinger_hessian(f, pt, FdConfig(step=fd_step))
    if hess.shape != coeff.matrix.shape:
        raise DimensionMismatch("field chart and coefficient matrix disagree")
    return complex(np.trace(coeff.matrix @ hess))


def _sym_derivative_matrix(f: Callable, pt, cfg: FdConfig) -> np.ndarray:
    """G[a, b] = e_ab df/dz_ab over a symmetric-matrix chart, as an n x n
    symmetric matrix; e_ab = (1 + delta_ab) / 2."""
    idx = PairIndex(pt.n)
    hol, _ = fd_wirtinger_gradient(f, pt, cfg)
    G = np.zeros((pt.n, pt.n), dtype=complex)
    for i, (p, q) in enumerate(idx.pairs):
        weight = 1.0 if p == q else 0.5
        G[p, q] = weight * hol[i]
        G[q, p] = G[p, q]
    return G


def cayley_chain_rule_check(
    f: Callable, pt: SiegelUpperPoint, cfg: FdConfig | None = None
) -> float:
    """Defect of the symmetric-derivative chain rule across the Cayley map:

        e_ab df/dv_ab  =  -(i/2) [(1 - W) G_W (1 - W)]_ab,

    where W is the Cayley image of V, G_W the weighted w-derivative matrix of
    f expressed in W, and f a scalar field on the upper half-plane.
    """
    cfg = cfg or FdConfig()
    if pt.u is not None:
        pt = SiegelUpperPoint(V=pt.V)
    G_V = _sym_derivative_matrix(f, pt, cfg)
    ball = partial_cayley(pt)

    def f_in_w(b):
        return f(inverse_partial_cayley(b))

    G_W = _sym_derivative_matrix(f_in_w, ball, cfg)
    A = np.eye(pt.n) - ball.W
    rhs = -0.5j * (A @ G_W @ A)
    return float(np.max(np.abs(G_V - rhs)))


def laplacian_correspondence_check(
    f: Callable, pt: SiegelUpperPoint, fd_step: float = 1e-4
) -> float:
    """|Delta_upper(f o Phi)(V) - Delta_ball(f)(Phi(V))| for a scalar field f
    on the ball: the operator is transported by the Cayley biholomorphism."""
    if pt.u is not None:
        pt = SiegelUpperPoint(V=pt.V)
    ball = partial_cayley(pt)

    def pulled_back(v):
        return f(partial_cayley(v))

    upper_val = apply_laplacian("upper", None, pulled_back, pt, fd_step)
    ball_val = apply_laplacian("ball", None, f, ball, fd_step)
    return float(abs(upper_val - ball_val))


def _ln_g(domain: str, params: MetricParams | None):
    if domain == "jacobi_ball":
        if params is None:
            raise ValueError("lnG on the jacobi ball needs metric parameters")
        return lambda pt: float(np.log(metric_det(params, pt).value))
    if domain == "ball":

        def f(pt):
            hk, _ = ball_metric_pair(pt)
            return float(np.log(np.linalg.det(hk).real))

        return f
    if domain == "upper":

        def f(pt):
            hx, _ = upper_metric_pair(pt)
            return float(np.log(np.linalg.det(hx).real))

        return f
    raise ValueError(f"unknown domain {domain!r}")


def _re_poly(seed: int):
    """Seeded smooth real test field |c0 + c.zeta + zeta^t Q zeta|^2 over the
    chart coordinates; its mixed Hessian is nonconstant and nonzero."""

    def f(pt):
        zeta = flatten_point(pt)
        d = zeta.shape[0]
        rng = np.random.default_rng(seed + 7919 * d)
        c0 = complex(rng.standard_normal(), rng.standard_normal())
        c = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        Q = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / d
        val = c0 + c @ zeta + zeta @ Q @ zeta
        return float(abs(val) ** 2)

    return f


BUILTIN_FIELDS = ("const", "lnG", "trWWbar", "normz2", "re_poly(seed)")


def builtin_field(name: str, domain: str, params: MetricParams | None = None):
    """CLI-facing test fields, keyed by name."""
    if name == "const":
        return lambda pt: 1.0
    if name == "lnG":
        return _ln_g(domain, params)
    if name == "trWWbar":

        def f(pt):
            m = pt.V if isinstance(pt, SiegelUpperPoint) else pt.W
            return float(np.trace(m @ m.conj()).real)

        return f
    if name == "normz2":

        def f(pt):
            vec = pt.u if isinstance(pt, SiegelUpperPoint) else pt.z
            if vec is None:
                raise ValueError("normz2 needs a point with a vector part")
            return float(np.vdot(vec, vec).real)

        return f
    m = re.fullmatch(r"re_poly[(:]?(\d+)\)?", name)
    if m:
        return _re_poly(int(m.group(1)))
    raise ValueError(f"unknown field {name!r}; available: {BUILTIN_FIELDS}")
