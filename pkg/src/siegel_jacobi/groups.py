"""Symplectic and Jacobi group elements, their actions on the four domains,
Cayley conjugation, the partial Cayley transform and the FC change of
coordinates.

The complexified symplectic element is the block matrix ``[[p, q], [qbar,
pbar]]``; the real one is ``[[a, b], [c, d]]``.  Jacobi elements extend these
by a translation (``alpha`` in C^n, resp. a real 2n-vector) and a central
coordinate that composes but never enters the actions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .domains import JacobiBallPoint, SiegelBallPoint, SiegelUpperPoint, TangentVector
from .errors import DimensionMismatch, InvalidInput, SingularDenominator

__all__ = [
    "SymplecticC",
    "SymplecticR",
    "JacobiElementC",
    "JacobiElementR",
    "compose_jacobi_c",
    "compose_jacobi_r",
    "inverse_jacobi_c",
    "inverse_jacobi_r",
    "cayley_conjugate",
    "inverse_cayley_conjugate",
    "theta",
    "act_ball",
    "act_upper",
    "act_siegel_ball",
    "partial_cayley",
    "inverse_partial_cayley",
    "fc_transform",
    "inverse_fc_transform",
    "act_ball_differential",
    "random_symplectic_r",
    "random_jacobi_c",
    "random_jacobi_r",
]


def _solve(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """A^{-1} B with singularity mapped to SingularDenominator."""
    try:
        out = np.linalg.solve(A, B)
    except np.linalg.LinAlgError as exc:
        raise SingularDenominator(str(exc)) from exc
    if not np.all(np.isfinite(out)):
        raise SingularDenominator("non-finite entries in solve result")
    return out


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


@dataclass(frozen=True)
class SymplecticC:
    """Blocks (p, q) of [[p, q], [qbar, pbar]] with p p* - q q* = 1,
    p q^t = q p^t, p* p - q^t qbar = 1, p^t qbar = q* p."""

    p: np.ndarray
    q: np.ndarray
    tol: float = 1e-10

    def __post_init__(self):
        p = np.asarray(self.p, dtype=complex)
        q = np.asarray(self.q, dtype=complex)
        if p.shape != q.shape or p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise DimensionMismatch("p and q must be square of equal size")
        n = p.shape[0]
        eye = np.eye(n)
        defect = max(
            _max_abs(p @ p.conj().T - q @ q.conj().T - eye),
            _max_abs(p @ q.T - q @ p.T),
            _max_abs(p.conj().T @ p - q.T @ q.conj() - eye),
            _max_abs(p.T @ q.conj() - q.conj().T @ p),
        )
        if defect > self.tol:
            raise InvalidInput(f"symplectic relations violated by {defect:.3e}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def n(self) -> int:
        return self.p.shape[0]

    @classmethod
    def identity(cls, n: int) -> "SymplecticC":
        return cls(np.eye(n), np.zeros((n, n)))

    def inverse(self) -> "SymplecticC":
        return SymplecticC(self.p.conj().T, -self.q.T)

    def __matmul__(self, other: "SymplecticC") -> "SymplecticC":
        if self.n != other.n:
            raise DimensionMismatch("group elements of different size")
        p = self.p @ other.p + self.q @ other.q.conj()
        q = self.p @ other.q + self.q @ other.p.conj()
        return SymplecticC(p, q)

    def act(self, alpha: np.ndarray) -> np.ndarray:
        """g x alpha = p alpha + q conj(alpha)."""
        return self.p @ alpha + self.q @ alpha.conj()

    def act_inverse(self, alpha: np.ndarray) -> np.ndarray:
        """g^{-1} x alpha = p* alpha - q^t conj(alpha)."""
        return self.p.conj().T @ alpha - self.q.T @ alpha.conj()


@dataclass(frozen=True)
class SymplecticR:
    """Real blocks (a, b, c, d) with g^t J g = J."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    tol: float = 1e-10

    def __post_init__(self):
        blocks = {}
        shape = None
        for name in "abcd":
            m = np.asarray(getattr(self, name), dtype=float)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise DimensionMismatch(f"{name} must be square")
            if shape is None:
                shape = m.shape
            elif m.shape != shape:
                raise DimensionMismatch("blocks of different size")
            blocks[name] = m
        a, b, c, d = blocks["a"], blocks["b"], blocks["c"], blocks["d"]
        eye = np.eye(shape[0])
        defect = max(
            _max_abs(a.T @ c - c.T @ a),
            _max_abs(b.T @ d - d.T @ b),
            _max_abs(a.T @ d - c.T @ b - eye),
        )
        if defect > self.tol:
            raise InvalidInput(f"real symplectic relations violated by {defect:.3e}")
        for name, m in blocks.items():
            object.__setattr__(self, name, m)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @classmethod
    def identity(cls, n: int) -> "SymplecticR":
        z = np.zeros((n, n))
        return cls(np.eye(n), z, z.copy(), np.eye(n))

    def matrix(self) -> np.ndarray:
        return np.block([[self.a, self.b], [self.c, self.d]])

    @classmethod
    def from_matrix(cls, M: np.ndarray, tol: float = 1e-10) -> "SymplecticR":
        n = M.shape[0] // 2
        return cls(M[:n, :n], M[:n, n:], M[n:, :n], M[n:, n:], tol=tol)

    def inverse(self) -> "SymplecticR":
        return SymplecticR(self.d.T, -self.b.T, -self.c.T, self.a.T)

    def __matmul__(self, other: "SymplecticR") -> "SymplecticR":
        if self.n != other.n:
            raise DimensionMismatch("group elements of different size")
        return SymplecticR.from_matrix(self.matrix() @ other.matrix())


@dataclass(frozen=True)
class JacobiElementC:
    """(g, alpha, t): complexified symplectic part plus Heisenberg data."""

    g: SymplecticC
    alpha: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=complex).reshape(-1)
        if alpha.shape[0] != self.g.n:
            raise DimensionMismatch("alpha must have length n")
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self) -> int:
        return self.g.n

    @classmethod
    def identity(cls, n: int) -> "JacobiElementC":
        return cls(SymplecticC.identity(n), np.zeros(n, dtype=complex), 0.0)


@dataclass(frozen=True)
class JacobiElementR:
    """(g, X, kappa): real symplectic part, translation X = (lam, mu) in
    R^{2n} and central coordinate.  The complex translation of the Cayley
    image is alpha = X[n:] + i X[:n]."""

    g: SymplecticR
    lambda_mu: np.ndarray
    k_center: float = 0.0

    def __post_init__(self):
        x = np.asarray(self.lambda_mu, dtype=float).reshape(-1)
        if x.shape[0] != 2 * self.g.n:
            raise DimensionMismatch("lambda_mu must have length 2n")
        object.__setattr__(self, "lambda_mu", x)

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def alpha_im(self) -> np.ndarray:
        return self.lambda_mu[: self.n]

    @property
    def alpha_re(self) -> np.ndarray:
        return self.lambda_mu[self.n :]

    @classmethod
    def identity(cls, n: int) -> "JacobiElementR":
        return cls(SymplecticR.identity(n), np.zeros(2 * n), 0.0)


def compose_jacobi_c(h1: JacobiElementC, h2: JacobiElementC) -> JacobiElementC:
    """(g1, a1, t1)(g2, a2, t2) = (g1 g2, g2^{-1} x a1 + a2,
    t1 + t2 + Im(g2^{-1} x a1 . conj(a2)))."""
    if h1.n != h2.n:
        raise DimensionMismatch("elements of different size")
    moved = h2.g.act_inverse(h1.alpha)
    alpha = moved + h2.alpha
    t = h1.t + h2.t + float(np.sum(moved * h2.alpha.conj()).imag)
    return JacobiElementC(h1.g @ h2.g, alpha, t)


def inverse_jacobi_c(h: JacobiElementC) -> JacobiElementC:
    return JacobiElementC(h.g.inverse(), -h.g.act(h.alpha), -h.t)


_J_CACHE: dict[int, np.ndarray] = {}


def _sp_form(n: int) -> np.ndarray:
    if n not in _J_CACHE:
        z = np.zeros((n, n))
        e = np.eye(n)
        _J_CACHE[n] = np.block([[z, e], [-e, z]])
    return _J_CACHE[n]


def compose_jacobi_r(h1: JacobiElementR, h2: JacobiElementR) -> JacobiElementR:
    """(M, X, k)(M', X', k') = (M M', X M' + X', k + k' + X M' J X'^t)."""
    if h1.n != h2.n:
        raise DimensionMismatch("elements of different size")
    M2 = h2.g.matrix()
    xm = h1.lambda_mu @ M2
    k = h1.k_center + h2.k_center + float(xm @ _sp_form(h1.n) @ h2.lambda_mu)
    return JacobiElementR(h1.g @ h2.g, xm + h2.lambda_mu, k)


def inverse_jacobi_r(h: JacobiElementR) -> JacobiElementR:
    ginv = h.g.inverse()
    x = -h.lambda_mu @ ginv.matrix()
    # central part: -k - (X M^{-1}) J (-X M^{-1})^t = -k, since v J v^t = 0
    return JacobiElementR(ginv, x, -h.k_center)


def cayley_conjugate(g: SymplecticR) -> SymplecticC:
    """2p = a + d + i(b - c), 2q = a - d - i(b + c)."""
    p = 0.5 * (g.a + g.d + 1j * (g.b - g.c))
    q = 0.5 * (g.a - g.d - 1j * (g.b + g.c))
    return SymplecticC(p, q, tol=1e-8)


def inverse_cayley_conjugate(gc: SymplecticC) -> SymplecticR:
    """2a = p + q + cc, 2b = i(pbar - qbar - p + q), 2c = i(p + q - cc),
    2d = p - q + cc."""
    p, q = gc.p, gc.q
    a = (p + q + p.conj() + q.conj()) / 2.0
    b = 1j * (p.conj() - q.conj() - p + q) / 2.0
    c = 1j * (p + q - p.conj() - q.conj()) / 2.0
    d = (p - q + p.conj() - q.conj()) / 2.0
    for name, m in (("a", a), ("b", b), ("c", c), ("d", d)):
        if _max_abs(m.imag) > 1e-8:
            raise InvalidInput(f"block {name} of the real image is not real")
    return SymplecticR(a.real, b.real, c.real, d.real, tol=1e-8)


def theta(h: JacobiElementR) -> JacobiElementC:
    """Group isomorphism onto the complexified realization:
    (g, lam, mu, k) -> (g_C, mu + i lam, k)."""
    alpha = h.alpha_re + 1j * h.alpha_im
    return JacobiElementC(cayley_conjugate(h.g), alpha, h.k_center)


def act_siegel_ball(g: SymplecticC, W: np.ndarray) -> np.ndarray:
    """W1 = (p W + q)(qbar W + pbar)^{-1}, returned exactly symmetrized."""
    num = g.p @ W + g.q
    den = g.q.conj() @ W + g.p.conj()
    W1 = _solve(den.T, num.T).T  # num @ den^{-1}
    return 0.5 * (W1 + W1.T)


def act_ball(h: JacobiElementC, pt: JacobiBallPoint) -> JacobiBallPoint:
    """Holomorphic action on C^n x D_n:
    W1 = (p W + q)(qbar W + pbar)^{-1},
    z1 = (W q* + p*)^{-1} (z + alpha - W conj(alpha))."""
    if h.n != pt.n:
        raise DimensionMismatch("element and point of different size")
    g = h.g
    W1 = act_siegel_ball(g, pt.W)
    lhs = pt.W @ g.q.conj().T + g.p.conj().T
    z1 = _solve(lhs, pt.z + h.alpha - pt.W @ h.alpha.conj())
    return JacobiBallPoint(z=z1, W=W1)


def act_upper(h: JacobiElementR, pt: SiegelUpperPoint) -> SiegelUpperPoint:
    """V1 = (a V + b)(c V + d)^{-1}; u1 = (V c^t + d^t)^{-1}(u + V lam + mu)."""
    if h.n != pt.n:
        raise DimensionMismatch("element and point of different size")
    g = h.g
    num = g.a @ pt.V + g.b
    den = g.c @ pt.V + g.d
    V1 = _solve(den.T, num.T).T
    V1 = 0.5 * (V1 + V1.T)
    u1 = None
    if pt.u is not None:
        u1 = _solve(pt.V @ g.c.T + g.d.T, pt.u + pt.V @ h.alpha_im + h.alpha_re)
    return SiegelUpperPoint(V=V1, u=u1)


def partial_cayley(pt: SiegelUpperPoint) -> JacobiBallPoint | SiegelBallPoint:
    """Biholomorphism onto the ball model:
    W = (V - i)(V + i)^{-1}, z = 2i (V + i)^{-1} u."""
    n = pt.n
    eye = np.eye(n)
    den = pt.V + 1j * eye
    W = _solve(den.T, (pt.V - 1j * eye).T).T
    W = 0.5 * (W + W.T)
    if pt.u is None:
        return SiegelBallPoint(W)
    z = 2j * _solve(den, pt.u)
    return JacobiBallPoint(z=z, W=W)


def inverse_partial_cayley(pt: JacobiBallPoint | SiegelBallPoint) -> SiegelUpperPoint:
    """V = i (1 - W)^{-1} (1 + W), u = (1 - W)^{-1} z."""
    n = pt.n
    eye = np.eye(n)
    A = eye - pt.W
    V = 1j * _solve(A, eye + pt.W)
    V = 0.5 * (V + V.T)
    u = _solve(A, pt.z) if isinstance(pt, JacobiBallPoint) else None
    return SiegelUpperPoint(V=V, u=u)


def fc_transform(pt: JacobiBallPoint) -> tuple[np.ndarray, np.ndarray]:
    """Kaehler-product coordinates: eta = (1 - W Wbar)^{-1}(z + W zbar)."""
    N = pt.cross_gram()
    eta = _solve(N, pt.z + pt.W @ pt.z.conj())
    return eta, np.array(pt.W)


def inverse_fc_transform(eta: np.ndarray, W: np.ndarray) -> JacobiBallPoint:
    """z = eta - W conj(eta)."""
    eta = np.asarray(eta, dtype=complex).reshape(-1)
    W = np.asarray(W, dtype=complex)
    return JacobiBallPoint(z=eta - W @ eta.conj(), W=W)


def act_ball_differential(
    h: JacobiElementC, pt: JacobiBallPoint, tangent: TangentVector, fd_step: float = 1e-5
) -> TangentVector:
    """Pushforward of a tangent under act_ball.

    The W-part uses the closed form dW1 = (W q* + p*)^{-1} dW (qbar W +
    pbar)^{-1}; the z-part is a Richardson-refined directional derivative of
    the full action (the map is holomorphic, so the real directional
    derivative along the complex tangent is the pushforward).
    """
    if tangent.dz is None:
        raise ValueError("jacobi-ball tangent needs a dz component")
    g = h.g
    left = pt.W @ g.q.conj().T + g.p.conj().T
    right = g.q.conj() @ pt.W + g.p.conj()
    dW1 = _solve(left, tangent.dW) @ np.linalg.inv(right)
    dW1 = 0.5 * (dW1 + dW1.T)

    def z_of(s: float) -> np.ndarray:
        moved = act_ball(
            h, JacobiBallPoint(z=pt.z + s * tangent.dz, W=pt.W + s * tangent.dW)
        )
        return moved.z

    d1 = (z_of(fd_step) - z_of(-fd_step)) / (2 * fd_step)
    d2 = (z_of(fd_step / 2) - z_of(-fd_step / 2)) / fd_step
    dz1 = (4 * d2 - d1) / 3.0
    return TangentVector(dz=dz1, dW=dW1)


def random_symplectic_r(
    n: int, rng: np.random.Generator, scale: float = 1.0
) -> SymplecticR:
    """exp of a random sp(n, R) element with Frobenius norm capped at `scale`."""
    a = rng.standard_normal((n, n))
    b = rng.standard_normal((n, n))
    c = rng.standard_normal((n, n))
    b = 0.5 * (b + b.T)
    c = 0.5 * (c + c.T)
    X = np.block([[a, b], [c, -a.T]])
    norm = np.linalg.norm(X)
    if norm > scale:
        X *= scale / norm
    return SymplecticR.from_matrix(expm(X))


def random_jacobi_r(
    n: int, rng: np.random.Generator, scale: float = 1.0
) -> JacobiElementR:
    g = random_symplectic_r(n, rng, scale)
    return JacobiElementR(g, rng.standard_normal(2 * n), float(rng.standard_normal()))


def random_jacobi_c(
    n: int, rng: np.random.Generator, scale: float = 1.0
) -> JacobiElementC:
    return theta(random_jacobi_r(n, rng, scale))
