"""Computational geometry of the Siegel-Jacobi ball and its parent domains:
closed-form balanced metric, inverse, determinant, curvature,
Laplace-Beltrami operators, group actions, Cayley transforms and Berezin
kernels, each cross-checked against independent finite-difference oracles.
"""

from .domains import (
    BallDiagnostics,
    JacobiBallPoint,
    PairIndex,
    SiegelBallPoint,
    SiegelUpperPoint,
    TangentVector,
    delta_symbol,
    sample_point,
    validate_ball_point,
)
from .groups import (
    JacobiElementC,
    JacobiElementR,
    SymplecticC,
    SymplecticR,
    act_ball,
    act_ball_differential,
    act_upper,
    cayley_conjugate,
    compose_jacobi_c,
    compose_jacobi_r,
    fc_transform,
    inverse_cayley_conjugate,
    inverse_fc_transform,
    inverse_jacobi_c,
    inverse_jacobi_r,
    inverse_partial_cayley,
    partial_cayley,
    random_jacobi_c,
    random_jacobi_r,
    random_symplectic_r,
    theta,
)
from .kernels import (
    KernelEval,
    QuadratureSpec,
    VolumeData,
    epsilon_function,
    kernel_eval,
    normalization_constant,
    normalized_kernels,
    parseval_check_n1,
    two_point_kernel,
    volume_densities,
)
from .laplacian import (
    LaplacianCoefficients,
    apply_laplacian,
    builtin_field,
    cayley_chain_rule_check,
    laplacian_coefficients,
    laplacian_correspondence_check,
)
from .metric import (
    AuxMatrices,
    CurvatureData,
    DetResult,
    MetricEval,
    MetricInverse,
    MetricParams,
    ball_metric_pair,
    compute_aux,
    curvature,
    ds2_eval,
    kahler_potential,
    metric_blocks,
    metric_det,
    metric_inverse,
    upper_metric_pair,
)
from .oracle import (
    Chart,
    FdConfig,
    chart_for,
    fd_jacobian,
    fd_wirtinger_gradient,
    fd_wirtinger_hessian,
    flatten_point,
    volume_invariance_check,
)
from .verify import FuzzReport, PropertyResult, fuzz_all

__version__ = "0.1.0"
