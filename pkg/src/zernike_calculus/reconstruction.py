"""Least-squares wave-front coefficients from gradient coefficients.

The normal equations decouple per azimuthal order m and each block is a
min-matrix system whose inverse is bidiagonal, so the estimate reduces to

    alpha_n^m = C_n^m phi_n^m - C_{n+2}^m phi_{n+2}^m,   C_|m|^m = 1/|m|,  C_n^m = 1/(2n)

with the top degree of each column keeping only its first term.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .aggregate import CoefficientAggregate, GradientCoefficientPair, norm_sq
from .derivatives import DerivativeSign, apply_A

__all__ = [
    "ReconstructionReport",
    "phi_from_gradients",
    "reconstruction_weight",
    "reconstruct",
    "residual_norm_sq",
]

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ReconstructionReport:
    """Result of :func:`reconstruct`.

    ``per_m_orders`` maps each m to the finitization order I_m; the column
    then spans n = |m|, |m|+2, ..., |m|+2 I_m. ``boundary_degrees`` maps m to
    that top degree, where inconsistent data would bias the estimate most.
    """

    alpha_hat: CoefficientAggregate
    residual_norm_sq: float
    per_m_orders: dict[int, int]
    boundary_degrees: dict[int, int] = field(default_factory=dict)
    piston_undetermined: bool = True


def phi_from_gradients(pair: GradientCoefficientPair) -> CoefficientAggregate:
    """phi_{n'}^m = (beta+)_{n'-1}^{m+1} / 2 + (beta-)_{n'-1}^{m-1} / 2."""
    acc = {}
    for source, shift in ((pair.plus, -1), (pair.minus, 1)):
        for (m, n), v in source.items():
            key = (m + shift, n + 1)
            acc[key] = acc.get(key, 0) + _HALF * v
    return CoefficientAggregate(acc, pair.max_degree + 1)


def reconstruction_weight(n: int, m: int) -> Fraction:
    """C_n^m: 1/|m| at n = |m| (m != 0), otherwise 1/(2n)."""
    if n == abs(m):
        if m == 0:
            raise ValueError("piston has no reconstruction weight")
        return Fraction(1, abs(m))
    return Fraction(1, 2 * n)


def reconstruct(pair: GradientCoefficientPair, N: int) -> ReconstructionReport:
    """Least-squares wave-front aggregate of degree <= N from gradient data.

    Only gradient entries of degree <= N - 1 enter; higher ones cannot be
    matched by a degree-N wave-front and are ignored. The piston alpha_0^0 is
    not determined by gradients and is reported as 0.
    """
    if N < 1:
        raise ValueError(f"reconstruction degree must be >= 1, got {N}")
    phi = phi_from_gradients(pair)
    out = {}
    orders = {}
    boundary = {}
    for m in range(-N, N + 1):
        I = (N - abs(m)) // 2
        orders[m] = I
        top = abs(m) + 2 * I
        boundary[m] = top
        for n in range(max(abs(m), 2 if m == 0 else 0), top + 1, 2):
            value = reconstruction_weight(n, m) * phi[(m, n)]
            if n < top:
                value = value - reconstruction_weight(n + 2, m) * phi[(m, n + 2)]
            out[(m, n)] = value
    alpha_hat = CoefficientAggregate(out, N)
    return ReconstructionReport(
        alpha_hat=alpha_hat,
        residual_norm_sq=residual_norm_sq(alpha_hat, pair),
        per_m_orders=orders,
        boundary_degrees=boundary,
    )


def residual_norm_sq(alpha: CoefficientAggregate, pair: GradientCoefficientPair) -> float:
    """||A+ alpha - beta+||^2 + ||A- alpha - beta-||^2 in the ZC norm."""
    plus = apply_A(DerivativeSign.PLUS, alpha) - pair.plus
    minus = apply_A(DerivativeSign.MINUS, alpha) - pair.minus
    return float(norm_sq(plus) + norm_sq(minus))
