"""Zernike circle polynomials with exponential azimuthal dependence.

Z_n^m(rho, theta) = R_n^|m|(rho) * exp(i m theta), unnormalized, with the
convention that Z_n^m is identically zero whenever n - |m| is odd or negative.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
from scipy import fft

__all__ = [
    "DISK_TOLERANCE",
    "MONOMIAL_MAX_DEGREE",
    "ZernikeIndex",
    "EvalPoint",
    "RadialMethod",
    "is_valid_index",
    "radial_eval",
    "radial_eval_all_m",
    "radial_table",
    "circle_eval",
    "circle_eval_xy",
    "dct_sample_count",
    "lukosz_coeffs",
    "lukosz_eval",
    "generalized_zernike_coeffs",
    "generalized_zernike_eval",
    "generalized_zernike_norm",
    "scale_expansion",
]

# Points this far outside the unit circle are treated as boundary points.
DISK_TOLERANCE = 1e-12

# Above this degree the binomial sum loses all precision in floating point.
MONOMIAL_MAX_DEGREE = 20


def is_valid_index(n: int, m: int) -> bool:
    """True when n - |m| is even and non-negative."""
    d = n - abs(m)
    return d >= 0 and d % 2 == 0


@dataclass(frozen=True)
class ZernikeIndex:
    """Degree ``n`` and azimuthal order ``m`` of Z_n^m.

    Invalid combinations may be constructed; they stand for the zero
    polynomial. Check :attr:`valid` where that matters.
    """

    n: int
    m: int

    @property
    def valid(self) -> bool:
        return is_valid_index(self.n, self.m)

    @property
    def m_abs(self) -> int:
        return abs(self.m)

    def require_valid(self) -> "ZernikeIndex":
        if not self.valid:
            raise ValueError(f"invalid Zernike index n={self.n}, m={self.m}")
        return self


@dataclass(frozen=True)
class EvalPoint:
    """Cartesian point (nu, mu) on the closed unit disk."""

    nu: float
    mu: float

    def __post_init__(self):
        if self.nu * self.nu + self.mu * self.mu > 1.0 + DISK_TOLERANCE:
            raise ValueError(f"point ({self.nu}, {self.mu}) lies outside the unit disk")

    @property
    def rho(self) -> float:
        return min(float(np.hypot(self.nu, self.mu)), 1.0)

    @property
    def theta(self) -> float:
        return float(np.arctan2(self.mu, self.nu))


class RadialMethod(str, enum.Enum):
    """Evaluation route for the radial polynomials."""

    MONOMIAL = "monomial"
    RECURRENCE = "recurrence"
    CHEBYSHEV_DCT = "dct"


def _as_rho(rho):
    arr = np.asarray(rho, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("rho must lie in [0, 1]")
    return arr


def _check_degree(n, m_abs):
    if n < 0 or m_abs < 0:
        raise ValueError(f"degree and order must be non-negative, got n={n}, m_abs={m_abs}")


def _finish(values, like):
    return float(values) if np.ndim(like) == 0 else values


def _monomial(n, m, rho):
    if n > MONOMIAL_MAX_DEGREE:
        raise ValueError(
            f"monomial evaluation is limited to n <= {MONOMIAL_MAX_DEGREE}, got n={n}"
        )
    p = (n - m) // 2
    # coefficients of rho**(n - 2s), highest power first
    coeffs = [(-1) ** s * comb(n - s, p) * comb(p, s) for s in range(p + 1)]
    out = np.empty(rho.shape)
    # Rational evaluation: the only rounding is the final conversion.
    for idx, r in np.ndenumerate(rho):
        x = Fraction(float(r))
        x2 = x * x
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * x2 + c
        out[idx] = float(acc * x**m)
    return out


def radial_table(n_max: int, rho) -> np.ndarray:
    """All radial polynomials up to degree ``n_max`` by the four-term recurrence.

    Uses R_n^|m| = rho (R_{n-1}^|m-1| + R_{n-1}^|m+1|) - R_{n-2}^|m| started
    from R_0^0 = 1; entries with invalid parity or m > n stay zero.

    Returns
    -------
    ndarray, shape (n_max + 1, n_max + 2) + rho.shape
        ``table[n, m]`` holds R_n^m(rho). The extra column is zero padding.
    """
    rho = _as_rho(rho)
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    table = np.zeros((n_max + 1, n_max + 2) + rho.shape)
    table[0, 0] = 1.0
    for n in range(1, n_max + 1):
        ms = np.arange(n % 2, n + 1, 2)
        val = rho * (table[n - 1, np.abs(ms - 1)] + table[n - 1, ms + 1])
        if n >= 2:
            val = val - table[n - 2, ms]
        table[n, ms] = val
    return table


def _chebyshev_u(n, x):
    u_prev = np.ones_like(x)
    if n == 0:
        return u_prev
    u = 2.0 * x
    for _ in range(1, n):
        u_prev, u = u, 2.0 * x * u - u_prev
    return u


def dct_sample_count(n: int, m_abs: int) -> int:
    """Smallest even number of equidistant samples exceeding n + m_abs."""
    count = n + m_abs + 1
    return count + (count % 2)


def _dct_orders(n, orders, rho, n_samples):
    """R_n^m for each m in ``orders`` via the Chebyshev-U angular average.

    The integrand U_n(rho cos t) cos(m t) is even in t, so the full-period
    rectangle rule over ``n_samples`` points collapses to a type-I DCT over
    half a period.
    """
    half = n_samples // 2
    theta = np.pi * np.arange(half + 1) / half
    g = _chebyshev_u(n, rho[..., None] * np.cos(theta))
    spectrum = fft.dct(g, type=1, axis=-1) / n_samples
    return np.moveaxis(spectrum[..., list(orders)], -1, 0)


def radial_eval(n: int, m_abs: int, rho, method: RadialMethod | str = RadialMethod.RECURRENCE):
    """Evaluate the radial polynomial R_n^m_abs.

    Parameters
    ----------
    n, m_abs : int
        Degree and absolute azimuthal order. Combinations with n - m_abs odd
        or negative evaluate to zero.
    rho : float or array_like
        Radial coordinate(s) in [0, 1].
    method : RadialMethod
        ``MONOMIAL`` (binomial sum, n <= 20), ``RECURRENCE`` or
        ``CHEBYSHEV_DCT``.

    Returns
    -------
    float or ndarray
    """
    _check_degree(n, m_abs)
    method = RadialMethod(method)
    arr = _as_rho(rho)
    if not is_valid_index(n, m_abs):
        return _finish(np.zeros(arr.shape), rho)
    if method is RadialMethod.MONOMIAL:
        out = _monomial(n, m_abs, arr)
    elif method is RadialMethod.RECURRENCE:
        out = radial_table(n, arr)[n, m_abs]
    else:
        out = _dct_orders(n, [m_abs], arr, dct_sample_count(n, m_abs))[0]
    return _finish(out, rho)


def radial_eval_all_m(n: int, rho) -> np.ndarray:
    """R_n^m for m = n, n-2, ..., down to 0 or 1, from a single DCT.

    Returns an array of shape ``(n // 2 + 1,) + rho.shape``.
    """
    _check_degree(n, 0)
    arr = _as_rho(rho)
    orders = list(range(n, -1, -2))
    return _dct_orders(n, orders, arr, dct_sample_count(n, n))


def _polar(nu, mu):
    nu = np.asarray(nu, dtype=float)
    mu = np.asarray(mu, dtype=float)
    r2 = nu * nu + mu * mu
    if np.any(r2 > 1.0 + DISK_TOLERANCE):
        raise ValueError("evaluation point outside the unit disk")
    return np.minimum(np.sqrt(r2), 1.0), np.arctan2(mu, nu)


def circle_eval_xy(index: ZernikeIndex, nu, mu, method=RadialMethod.RECURRENCE):
    """Vectorized Z_n^m at Cartesian coordinates; zero for invalid indices."""
    rho, theta = _polar(nu, mu)
    if not index.valid:
        return np.zeros(rho.shape, dtype=complex)
    radial = np.asarray(radial_eval(index.n, index.m_abs, rho, method))
    return radial * np.exp(1j * index.m * theta)


def circle_eval(index: ZernikeIndex, point, method=RadialMethod.RECURRENCE) -> complex:
    """Z_n^m at a single point (an :class:`EvalPoint` or a ``(nu, mu)`` pair)."""
    if not isinstance(point, EvalPoint):
        point = EvalPoint(*point)
    return complex(circle_eval_xy(index, point.nu, point.mu, method))


def lukosz_coeffs(n: int, m: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """L_n^m = R_n^m - R_{n-2}^m as ``((n, 1), (n - 2, -1))``."""
    if m < 0 or n < m + 2 or (n - m) % 2:
        raise ValueError(f"Lukosz polynomial needs m >= 0, n >= m + 2, n - m even; got n={n}, m={m}")
    return ((n, 1), (n - 2, -1))


def lukosz_eval(n: int, m: int, rho, method=RadialMethod.RECURRENCE):
    return sum(c * np.asarray(radial_eval(k, m, rho, method)) for k, c in lukosz_coeffs(n, m))


def generalized_zernike_coeffs(n: int, m: int) -> tuple[tuple[int, Fraction], tuple[int, Fraction]]:
    """Radial expansion of the generalized Zernike function R_n^{m,1}.

    R_n^{m,1} = -(n - m + 2) / (2 (n + 2)) * L_{n+2}^m.
    """
    if m < 0 or n < m or (n - m) % 2:
        raise ValueError(f"need m >= 0, n >= m, n - m even; got n={n}, m={m}")
    scale = Fraction(-(n - m + 2), 2 * (n + 2))
    return tuple((k, scale * c) for k, c in lukosz_coeffs(n + 2, m))


def generalized_zernike_eval(n: int, m: int, rho, method=RadialMethod.RECURRENCE):
    return sum(float(c) * np.asarray(radial_eval(k, m, rho, method))
               for k, c in generalized_zernike_coeffs(n, m))


def generalized_zernike_norm(n: int, m: int) -> Fraction:
    """Integral of R_n^{m,1}(rho)**2 rho / (1 - rho**2) over [0, 1]."""
    generalized_zernike_coeffs(n, m)
    return Fraction(n - m + 2, 2 * (n + m + 2) * (n + 2))


def scale_expansion(n_prime: int, m: int, epsilon: float) -> list[tuple[int, float]]:
    """Expand R_{n'}^m(epsilon rho) in unscaled radial polynomials R_n^m(rho).

    Returns ``[(n, c_n)]`` for n = m, m+2, ..., n' with
    c_n = R_{n'}^n(epsilon) - R_{n'}^{n+2}(epsilon).
    """
    if m < 0 or n_prime < m or (n_prime - m) % 2:
        raise ValueError(f"need m >= 0, n' >= m, n' - m even; got n'={n_prime}, m={m}")
    if not 0.0 < epsilon <= 1.0:
        raise ValueError("epsilon must lie in (0, 1]")
    table = radial_table(n_prime, epsilon)
    row = np.append(table[n_prime], [0.0, 0.0])
    return [(n, float(row[n] - row[n + 2])) for n in range(m, n_prime + 1, 2)]
