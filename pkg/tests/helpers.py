"""Independent oracles shared by the test modules."""
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy as sp

from zernike_calculus import CoefficientAggregate

NU, MU = sp.symbols("nu mu", real=True)
RHO = sp.symbols("rho", nonnegative=True)


@lru_cache(maxsize=None)
def sym_radial(n, m_abs):
    """R_n^m(rho) from the Jacobi definition P_{(n-m)/2}^{(0,m)}(2 rho^2 - 1)."""
    if n < m_abs or (n - m_abs) % 2:
        return sp.Integer(0)
    k = (n - m_abs) // 2
    return sp.expand(RHO**m_abs * sp.jacobi(k, 0, m_abs, 2 * RHO**2 - 1))


@lru_cache(maxsize=None)
def sym_zernike(n, m):
    """Z_n^m as an exact polynomial in nu, mu."""
    a = abs(m)
    if n < a or (n - a) % 2:
        return sp.Integer(0)
    # R_n^a(rho) = rho^a P(rho^2) and rho^a e^{i m theta} = (nu +- i mu)^a
    poly_in_r2 = sp.expand(sym_radial(n, a) / RHO**a)
    radial = poly_in_r2.subs(RHO**2, NU**2 + MU**2)
    phase = (NU + sp.I * (1 if m >= 0 else -1) * MU) ** a
    return sp.expand(radial * phase)


def to_sympy(value):
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    if isinstance(value, int):
        return sp.Integer(value)
    z = complex(value)
    parts = []
    for x in (z.real, z.imag):
        if x != int(x):
            raise ValueError(f"non-integral float {value!r} in symbolic comparison")
        parts.append(sp.Integer(int(x)))
    return parts[0] + sp.I * parts[1]


def sym_aggregate(agg):
    return sp.expand(sum((to_sympy(v) * sym_zernike(n, m) for (m, n), v in agg.items()),
                         sp.Integer(0)))


def valid_indices(N, m_min=None):
    for m in range(-N, N + 1):
        if m_min is not None and m < m_min:
            continue
        for n in range(abs(m), N + 1, 2):
            yield m, n


def random_aggregate(rng, N, density=1.0, exclude_piston=False, top=None, real=False):
    """Random complex aggregate with entries of degree <= ``top`` (default N)."""
    top = N if top is None else top
    entries = {}
    for m, n in valid_indices(top):
        if exclude_piston and (m, n) == (0, 0):
            continue
        if rng.random() < density:
            entries[(m, n)] = complex(rng.normal(), 0.0 if real else rng.normal())
    return CoefficientAggregate(entries, N)


def disk_points(rng, count, rho_max=0.9):
    rho = rho_max * np.sqrt(rng.random(count))
    theta = 2 * np.pi * rng.random(count)
    return np.column_stack([rho * np.cos(theta), rho * np.sin(theta)])
