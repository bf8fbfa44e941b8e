"""Independent numerical ground truth: Wirtinger finite-difference gradients
and Hessians, numerical Jacobians of holomorphic maps with a holomorphy gate,
and the volume-density invariance check.

Nothing here calls the closed forms it is used to verify; perturbations of
symmetric-matrix coordinates always move the (p, q) and (q, p) entries
jointly, matching the package-wide symmetric-pair convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .domains import (
    JacobiBallPoint,
    PairIndex,
    SiegelBallPoint,
    SiegelUpperPoint,
)
from .errors import NonHolomorphic, StepTooLarge
from .groups import JacobiElementC, act_ball, act_siegel_ball

__all__ = [
    "FdConfig",
    "Chart",
    "chart_for",
    "flatten_point",
    "fd_wirtinger_gradient",
    "fd_wirtinger_hessian",
    "fd_jacobian",
    "volume_invariance_check",
]


@dataclass(frozen=True)
class FdConfig:
    """Step control for the finite-difference oracles.

    step is scaled per coordinate by (1 + |coordinate|) when scale_step is
    set; richardson combines h and h/2 stencils for O(h^4) truncation.
    """

    step: float = 1e-4
    scheme: str = "richardson"  # "central" | "richardson"
    scale_step: bool = True

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.scheme not in ("central", "richardson"):
            raise ValueError(f"unknown scheme {self.scheme!r}")


@dataclass(frozen=True)
class Chart:
    """Complex coordinates around a point: (z-block then ordered W-pairs)."""

    dim: int
    coords: np.ndarray                       # base coordinates, complex
    at_offset: Callable[[np.ndarray], object]  # complex offset -> point
    margin: float                            # distance proxy to the boundary


def _pair_basis(n: int, idx: PairIndex) -> list[np.ndarray]:
    basis = []
    for p, q in idx.pairs:
        e = np.zeros((n, n), dtype=complex)
        e[p, q] = 1.0
        e[q, p] = 1.0
        basis.append(e)
    return basis


def chart_for(pt) -> Chart:
    """Coordinate chart for a domain point (see the module docstring)."""
    if isinstance(pt, SiegelBallPoint):
        idx = PairIndex(pt.n)
        basis = _pair_basis(pt.n, idx)
        W0 = np.array(pt.W)

        def at_offset(delta: np.ndarray):
            W = W0.copy()
            for c, e in zip(delta, basis):
                if c != 0.0:
                    W = W + c * e
            return SiegelBallPoint.trusted(W)

        margin = float(np.linalg.eigvalsh(pt.cross_gram())[0])
        return Chart(idx.size, idx.pack(W0), at_offset, margin)

    if isinstance(pt, JacobiBallPoint):
        idx = PairIndex(pt.n)
        basis = _pair_basis(pt.n, idx)
        z0, W0, n = np.array(pt.z), np.array(pt.W), pt.n

        def at_offset(delta: np.ndarray):
            W = W0.copy()
            for c, e in zip(delta[n:], basis):
                if c != 0.0:
                    W = W + c * e
            return JacobiBallPoint.trusted(z0 + delta[:n], W)

        margin = float(np.linalg.eigvalsh(pt.cross_gram())[0])
        coords = np.concatenate([z0, idx.pack(W0)])
        return Chart(n + idx.size, coords, at_offset, margin)

    if isinstance(pt, SiegelUpperPoint):
        idx = PairIndex(pt.n)
        basis = _pair_basis(pt.n, idx)
        V0, n = np.array(pt.V), pt.n
        u0 = None if pt.u is None else np.array(pt.u)

        if u0 is None:

            def at_offset(delta: np.ndarray):
                V = V0.copy()
                for c, e in zip(delta, basis):
                    if c != 0.0:
                        V = V + c * e
                return SiegelUpperPoint.trusted(V)

            coords = idx.pack(V0)
            dim = idx.size
        else:

            def at_offset(delta: np.ndarray):
                V = V0.copy()
                for c, e in zip(delta[n:], basis):
                    if c != 0.0:
                        V = V + c * e
                return SiegelUpperPoint.trusted(V, u0 + delta[:n])

            coords = np.concatenate([u0, idx.pack(V0)])
            dim = n + idx.size
        margin = float(np.linalg.eigvalsh(0.5 * (pt.R + pt.R.T))[0])
        return Chart(dim, coords, at_offset, margin)

    raise TypeError(f"no chart for {type(pt).__name__}")


def flatten_point(pt) -> np.ndarray:
    """Complex coordinate vector of a point in its chart."""
    return chart_for(pt).coords


def _steps(chart: Chart, cfg: FdConfig) -> np.ndarray:
    if cfg.scale_step:
        h = cfg.step * (1.0 + np.abs(chart.coords))
    else:
        h = np.full(chart.dim, cfg.step)
    # one stencil point moves at most two coordinates by h each; a coordinate
    # move of size h shifts the relevant Gram spectrum by at most ~4h
    worst = 4.0 * float(np.max(h)) * (1.0 + float(np.max(h)))
    if worst >= chart.margin:
        raise StepTooLarge(
            f"stencil excursion {worst:.3e} exceeds domain margin {chart.margin:.3e}"
        )
    return h


def _second_dir(f, chart, ea, eb, ha, hb, f0):
    """Second derivative along two real directions (complex unit steps)."""
    if ea is eb and ha == hb:
        up = f(chart.at_offset(ha * ea))
        dn = f(chart.at_offset(-ha * ea))
        return (up - 2.0 * f0 + dn) / (ha.real**2 + ha.imag**2)
    pp = f(chart.at_offset(ha * ea + hb * eb))
    pm = f(chart.at_offset(ha * ea - hb * eb))
    mp = f(chart.at_offset(-ha * ea + hb * eb))
    mm = f(chart.at_offset(-ha * ea - hb * eb))
    na = abs(ha)
    nb = abs(hb)
    return (pp - pm - mp + mm) / (4.0 * na * nb)


def _hessian_entry(f, chart, a, b, ha, hb, f0):
    """d^2 f / dz_a dzbar_b = (Dxx + Dyy + i (Dxy - Dyx)) / 4."""
    ea = np.zeros(chart.dim, dtype=complex)
    eb = np.zeros(chart.dim, dtype=complex)
    ea[a] = 1.0
    eb[b] = 1.0
    if a == b:
        dxx = _second_dir(f, chart, ea, ea, ha, ha, f0)
        dyy = _second_dir(f, chart, ea, ea, 1j * ha, 1j * ha, f0)
        return 0.25 * (dxx + dyy)
    dxx = _second_dir(f, chart, ea, eb, ha, hb, f0)
    dyy = _second_dir(f, chart, ea, eb, 1j * ha, 1j * hb, f0)
    dxy = _second_dir(f, chart, ea, eb, ha, 1j * hb, f0)
    dyx = _second_dir(f, chart, ea, eb, 1j * ha, hb, f0)
    return 0.25 * (dxx + dyy + 1j * (dxy - dyx))


def fd_wirtinger_hessian(f: Callable, pt, cfg: FdConfig | None = None) -> np.ndarray:
    """Mixed Wirtinger Hessian H[a, b] = d^2 f / dz_a dzbar_b over the
    point's chart, via central differences (optionally Richardson-refined).
    """
    cfg = cfg or FdConfig()
    chart = chart_for(pt)
    h = _steps(chart, cfg)
    f0 = f(chart.at_offset(np.zeros(chart.dim, dtype=complex)))
    d = chart.dim
    out = np.empty((d, d), dtype=complex)
    for a in range(d):
        for b in range(d):
            coarse = _hessian_entry(f, chart, a, b, h[a], h[b], f0)
            if cfg.scheme == "central":
                out[a, b] = coarse
            else:
                fine = _hessian_entry(f, chart, a, b, h[a] / 2, h[b] / 2, f0)
                out[a, b] = (4.0 * fine - coarse) / 3.0
    return out


def _gradient_entry(f, chart, a, ha):
    e = np.zeros(chart.dim, dtype=complex)
    e[a] = 1.0
    dx = (f(chart.at_offset(ha * e)) - f(chart.at_offset(-ha * e))) / (2 * ha)
    hy = 1j * ha
    dy = (f(chart.at_offset(hy * e)) - f(chart.at_offset(-hy * e))) / (2 * ha)
    return 0.5 * (dx - 1j * dy), 0.5 * (dx + 1j * dy)


def fd_wirtinger_gradient(
    f: Callable, pt, cfg: FdConfig | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """(df/dz_a, df/dzbar_a) over the chart coordinates."""
    cfg = cfg or FdConfig()
    chart = chart_for(pt)
    h = _steps(chart, cfg)
    hol = np.empty(chart.dim, dtype=complex)
    ahol = np.empty(chart.dim, dtype=complex)
    for a in range(chart.dim):
        g1, gb1 = _gradient_entry(f, chart, a, h[a])
        if cfg.scheme == "richardson":
            g2, gb2 = _gradient_entry(f, chart, a, h[a] / 2)
            g1, gb1 = (4 * g2 - g1) / 3.0, (4 * gb2 - gb1) / 3.0
        hol[a] = g1
        ahol[a] = gb1
    return hol, ahol


def fd_jacobian(
    map_fn: Callable,
    pt,
    cfg: FdConfig | None = None,
    hol_tol: float = 1e-7,
) -> np.ndarray:
    """Holomorphic Jacobian J[out, in] of a point-to-point map over ordered
    coordinates.  The dbar block is measured as well; if its largest entry
    exceeds hol_tol the map is flagged NonHolomorphic.
    """
    cfg = cfg or FdConfig()
    chart = chart_for(pt)
    h = _steps(chart, cfg)

    def coords_of(delta):
        return flatten_point(map_fn(chart.at_offset(delta)))

    base = coords_of(np.zeros(chart.dim, dtype=complex))
    out_dim = base.shape[0]
    J = np.empty((out_dim, chart.dim), dtype=complex)
    Jbar = np.empty((out_dim, chart.dim), dtype=complex)

    def column(a, ha):
        e = np.zeros(chart.dim, dtype=complex)
        e[a] = 1.0
        dx = (coords_of(ha * e) - coords_of(-ha * e)) / (2 * ha)
        dy = (coords_of(1j * ha * e) - coords_of(-1j * ha * e)) / (2 * ha)
        return 0.5 * (dx - 1j * dy), 0.5 * (dx + 1j * dy)

    for a in range(chart.dim):
        c1, cb1 = column(a, h[a])
        if cfg.scheme == "richardson":
            c2, cb2 = column(a, h[a] / 2)
            c1, cb1 = (4 * c2 - c1) / 3.0, (4 * cb2 - cb1) / 3.0
        J[:, a] = c1
        Jbar[:, a] = cb1

    worst = float(np.max(np.abs(Jbar))) if Jbar.size else 0.0
    if worst > hol_tol:
        raise NonHolomorphic(f"dbar block has max entry {worst:.3e} > {hol_tol:.3e}")
    return J


def _ball_density(pt, exponent: int) -> float:
    sign, logdet = np.linalg.slogdet(pt.cross_gram())
    return float(np.exp(-exponent * logdet))


def volume_invariance_check(
    domain: str,
    h: JacobiElementC,
    pt,
    cfg: FdConfig | None = None,
) -> float:
    """|det J|^2 Q(h.pt) / Q(pt) - 1 for the invariant densities
    Q = det(1 - W Wbar)^{-(n+1)} on the ball and ^{-(n+2)} on the Jacobi
    ball.  Zero exactly when the density transforms by the squared Jacobian.
    """
    if domain == "ball":
        if not isinstance(pt, SiegelBallPoint):
            pt = SiegelBallPoint(pt.W)
        action = lambda x: SiegelBallPoint.trusted(act_siegel_ball(h.g, x.W))
        exponent = pt.n + 1
    elif domain == "jacobi_ball":
        action = lambda x: act_ball(h, JacobiBallPoint(z=x.z, W=x.W))
        exponent = pt.n + 2
    else:
        raise ValueError(f"unknown domain {domain!r}")
    J = fd_jacobian(action, pt, cfg)
    moved = action(pt)
    ratio = (
        abs(np.linalg.det(J)) ** 2
        * _ball_density(moved, exponent)
        / _ball_density(pt, exponent)
    )
    return abs(ratio - 1.0)
