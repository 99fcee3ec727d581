"""Laplacian and inverse Laplacian of circle polynomials; Neumann problem on the disk."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number

from .aggregate import CoefficientAggregate
from .polynomials import ZernikeIndex

__all__ = [
    "FourierBoundary",
    "NeumannSolution",
    "NeumannCompatibilityError",
    "laplacian_single",
    "laplacian",
    "laplacian_matrix_entry",
    "inverse_laplacian_single",
    "inverse_laplacian",
    "boundary_slope",
    "boundary_normal_derivative",
    "solve_neumann",
]


class NeumannCompatibilityError(ValueError):
    """The m = 0 boundary flux does not match the source term."""

    def __init__(self, defect: float, tol: float):
        super().__init__(f"incompatible Neumann data: m=0 defect {defect:.6g} exceeds tol {tol:.3g}")
        self.defect = defect
        self.tol = tol


@dataclass(frozen=True)
class FourierBoundary:
    """Boundary function psi(theta) = sum_m coeffs[m] exp(i m theta)."""

    coeffs: dict[int, Number] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, v in self.coeffs.items():
            if not isinstance(v, Number):
                raise TypeError(f"Fourier coefficient for m={m} is not a number: {v!r}")
            if v != 0:
                clean[int(m)] = v
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, m: int):
        return self.coeffs.get(m, 0)

    @property
    def max_order(self) -> int:
        return max((abs(m) for m in self.coeffs), default=0)


@dataclass(frozen=True)
class NeumannSolution:
    phi: CoefficientAggregate
    compatibility_defect: float
    piston_free: bool = True


def laplacian_matrix_entry(n: int, s: int) -> int:
    """Coefficient of Z_s^m in Delta Z_n^m; zero unless s <= n - 2 with n - s even."""
    if s < 0 or s > n - 2 or (n - s) % 2:
        return 0
    return (s + 1) * (n + s + 2) * (n - s)


def laplacian_single(index: ZernikeIndex) -> CoefficientAggregate:
    """Delta Z_n^m = sum_{s=|m|(2)(n-2)} (s+1)(n+s+2)(n-s) Z_s^m, exactly."""
    index.require_valid()
    n, m = index.n, index.m
    terms = {(m, s): laplacian_matrix_entry(n, s) for s in range(abs(m), n - 1, 2)}
    return CoefficientAggregate(terms, max(n - 2, 0))


def laplacian(alpha: CoefficientAggregate) -> CoefficientAggregate:
    acc = defaultdict(int)
    for (m, n), v in alpha.items():
        for s in range(abs(m), n - 1, 2):
            acc[(m, s)] += laplacian_matrix_entry(n, s) * v
    return CoefficientAggregate(acc, max(alpha.max_degree - 2, 0))


def inverse_laplacian_single(index: ZernikeIndex) -> CoefficientAggregate:
    """Polynomial g of azimuthal order m with Delta g = Z_{n'}^m.

    g = Z_{n'+2}/(4(n'+2)(n'+1)) - Z_{n'}/(2n'(n'+2)) + Z_{n'-2}/(4n'(n'+1)),
    with every term of degree <= |m| omitted: such terms are harmonic or
    invalid, so g never has a Z_|m|^m component.
    """
    index.require_valid()
    n, m = index.n, index.m
    terms = {(m, n + 2): Fraction(1, 4 * (n + 2) * (n + 1))}
    if n > abs(m):
        terms[(m, n)] = Fraction(-1, 2 * n * (n + 2))
    if n - 2 > abs(m):
        terms[(m, n - 2)] = Fraction(1, 4 * n * (n + 1))
    return CoefficientAggregate(terms, n + 2)


def inverse_laplacian(alpha: CoefficientAggregate) -> CoefficientAggregate:
    """Linear extension of :func:`inverse_laplacian_single`; degree N -> N + 2."""
    acc = defaultdict(int)
    for (m, n), v in alpha.items():
        for key, c in inverse_laplacian_single(ZernikeIndex(n, m)).items():
            acc[key] += c * v
    return CoefficientAggregate(acc, alpha.max_degree + 2)


def boundary_slope(n: int, m: int) -> int:
    """d/drho R_n^|m| at rho = 1, i.e. (n(n+2) - m^2) / 2."""
    return (n * (n + 2) - m * m) // 2


def boundary_normal_derivative(alpha: CoefficientAggregate) -> FourierBoundary:
    """Fourier coefficients of the outward normal derivative on the unit circle."""
    acc = defaultdict(int)
    for (m, n), v in alpha.items():
        acc[m] += boundary_slope(n, m) * v
    return FourierBoundary(dict(acc))


def solve_neumann(
    f: CoefficientAggregate,
    psi: FourierBoundary,
    N: int | None = None,
    tol: float = 1e-10,
) -> NeumannSolution:
    """Solve -Delta phi = f on the disk with d phi/dn = psi on the boundary.

    Parameters
    ----------
    f : CoefficientAggregate
        Source term of degree <= N.
    psi : FourierBoundary
        Boundary data with |m| <= N + 2.
    N : int, optional
        Degree bound of ``f``; defaults to ``f.max_degree``.
    tol : float
        Largest accepted mismatch of the m = 0 boundary coefficient.

    Returns
    -------
    NeumannSolution
        ``phi`` of degree <= N + 2 with zero piston.

    Raises
    ------
    NeumannCompatibilityError
        If the m = 0 flux condition fails by more than ``tol``.
    """
    if N is None:
        N = f.max_degree
    if any(n > N for _, n in f.keys()):
        raise ValueError(f"source term has entries above degree N={N}")
    if psi.max_order > N + 2:
        raise ValueError(f"boundary data of order {psi.max_order} exceeds N + 2 = {N + 2}")

    particular = -inverse_laplacian(f).with_max_degree(N + 2)
    flux = boundary_normal_derivative(particular)
    defect = float(abs(psi[0] - flux[0]))
    if defect > tol:
        raise NeumannCompatibilityError(defect, tol)

    harmonic = {}
    for m in set(psi.coeffs) | set(flux.coeffs):
        if m != 0:
            harmonic[(m, abs(m))] = Fraction(1, abs(m)) * (psi[m] - flux[m])
    phi = particular + CoefficientAggregate(harmonic, N + 2)
    return NeumannSolution(phi=phi, compatibility_defect=defect)
