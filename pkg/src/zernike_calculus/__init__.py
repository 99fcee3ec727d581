"""Closed-form calculus on Zernike circle polynomials.

Gradient and Laplacian expansions, modal least-squares wave-front
reconstruction from gradient coefficients, and a Neumann solver for
-Lap(phi) = f on spaces of circle polynomials.
"""
from .aggregate import (
    CoefficientAggregate,
    GradientCoefficientPair,
    inner_product,
    norm_sq,
    realness_defect,
    wavefront_eval,
)
from .derivatives import (
    DerivativeSign,
    apply_A,
    apply_A_adjoint,
    apply_normal_operator,
    d_combined,
    d_combined_single,
    d_mu,
    d_nu,
    normal_kernel,
)
from .laplacian import (
    FourierBoundary,
    NeumannCompatibilityError,
    NeumannSolution,
    boundary_normal_derivative,
    inverse_laplacian,
    inverse_laplacian_single,
    laplacian,
    laplacian_single,
    solve_neumann,
)
from .polynomials import (
    EvalPoint,
    RadialMethod,
    ZernikeIndex,
    circle_eval,
    circle_eval_xy,
    generalized_zernike_eval,
    is_valid_index,
    lukosz_coeffs,
    lukosz_eval,
    radial_eval,
    radial_eval_all_m,
    scale_expansion,
)
from .reconstruction import ReconstructionReport, phi_from_gradients, reconstruct, residual_norm_sq
from .structured import (
    LaplacianMatrixSpec,
    MinMatrixSpec,
    dense_inverse,
    invert_C,
    invert_LM,
)

__version__ = "0.1.0"
