"""Zernike expansions of first-order derivatives and the operators A+, A-.

With the exponential azimuthal convention the combinations
d/dnu +- i d/dmu act on a single circle polynomial as

    (d/dnu +- i d/dmu) Z_n^m = 2 sum_{l=0}^{(n-|m|)/2} (n - 2l) Z_{n-1-2l}^{m+-1}

with integer coefficients. On coefficient aggregates this becomes the
suffix-sum operator A+- with entries 2(n+1) sum_{n'>=n} alpha_{n'+1}^{m-+1}.
"""
from __future__ import annotations

import enum
from collections import defaultdict

from .aggregate import CoefficientAggregate
from .polynomials import ZernikeIndex, is_valid_index

__all__ = [
    "DerivativeSign",
    "d_combined_single",
    "d_combined",
    "d_nu",
    "d_mu",
    "apply_A",
    "apply_A_adjoint",
    "apply_normal_operator",
    "normal_kernel",
]


class DerivativeSign(enum.IntEnum):
    """PLUS selects d/dnu + i d/dmu, MINUS selects d/dnu - i d/dmu."""

    PLUS = 1
    MINUS = -1


def _series_terms(n, m, shift):
    """Nonzero terms (m + shift, degree, n - 2l) of the single-polynomial series."""
    target = m + shift
    for l in range((n - abs(m)) // 2 + 1):
        weight = n - 2 * l
        degree = n - 1 - 2 * l
        if weight and is_valid_index(degree, target):
            yield target, degree, weight


def d_combined_single(index: ZernikeIndex, sign) -> CoefficientAggregate:
    """Exact expansion of (d/dnu +- i d/dmu) Z_n^m.

    Terms landing on invalid indices vanish by convention and are dropped.
    """
    index.require_valid()
    s = DerivativeSign(sign)
    terms = {(mm, d): 2 * w for mm, d, w in _series_terms(index.n, index.m, int(s))}
    return CoefficientAggregate(terms, max(index.n - 1, 0))


def _linear(alpha, single_terms):
    acc = defaultdict(int)
    for (m, n), value in alpha.items():
        for key, c in single_terms(n, m):
            acc[key] += c * value
    return CoefficientAggregate(acc, max(alpha.max_degree - 1, 0))


def d_combined(sign, alpha: CoefficientAggregate) -> CoefficientAggregate:
    """Linear extension of :func:`d_combined_single` to an aggregate."""
    s = int(DerivativeSign(sign))
    return _linear(alpha, lambda n, m: (((mm, d), 2 * w) for mm, d, w in _series_terms(n, m, s)))


def d_nu(alpha: CoefficientAggregate) -> CoefficientAggregate:
    """Aggregate of dW/dnu."""
    def terms(n, m):
        for shift in (-1, 1):
            for mm, d, w in _series_terms(n, m, shift):
                yield (mm, d), w
    return _linear(alpha, terms)


def d_mu(alpha: CoefficientAggregate) -> CoefficientAggregate:
    """Aggregate of dW/dmu."""
    def terms(n, m):
        for shift, unit in ((-1, 1j), (1, -1j)):
            for mm, d, w in _series_terms(n, m, shift):
                yield (mm, d), unit * w
    return _linear(alpha, terms)


def apply_A(sign, alpha: CoefficientAggregate) -> CoefficientAggregate:
    """Coefficient-space operator A+ or A-.

    Parameters
    ----------
    sign : DerivativeSign
    alpha : CoefficientAggregate
        Wave-front coefficients, truncated at degree N = ``alpha.max_degree``.

    Returns
    -------
    CoefficientAggregate
        beta with beta_n^m = 2(n+1) sum_{n'=n(2)N-1} alpha_{n'+1}^{m-+1},
        of max_degree N - 1 (0 when N = 0).
    """
    s = int(DerivativeSign(sign))
    N = alpha.max_degree
    top_out = max(N - 1, 0)
    out = {}
    for m_src in alpha.orders():
        col = alpha.column(m_src)
        m = m_src + s
        start = abs(m)
        top = top_out - ((top_out - start) % 2)
        running = 0
        for n in range(top, start - 1, -2):
            running += col.get(n + 1, 0)
            if running != 0:
                out[(m, n)] = 2 * (n + 1) * running
    return CoefficientAggregate(out, top_out)


def apply_A_adjoint(sign, gamma: CoefficientAggregate, max_degree: int | None = None) -> CoefficientAggregate:
    """Adjoint of A+- under the ZC inner product.

    Entries are 2(n+1) sum_{n'=|m|(2)n} gamma_{n'-1}^{m+-1}. Output degrees run
    up to ``max_degree``, default ``gamma.max_degree + 1``, so that
    <A alpha, gamma> = <alpha, A^H gamma> holds exactly for alpha of that degree.
    """
    s = int(DerivativeSign(sign))
    top_out = gamma.max_degree + 1 if max_degree is None else max_degree
    out = {}
    for m_src in gamma.orders():
        col = gamma.column(m_src)
        m = m_src - s
        running = 0
        for n in range(abs(m), top_out + 1, 2):
            running += col.get(n - 1, 0)
            if running != 0:
                out[(m, n)] = 2 * (n + 1) * running
    return CoefficientAggregate(out, top_out)


def normal_kernel(n: int, m: int) -> int:
    """B_n^m = |m| + (n - |m|)(n + |m| + 2) / 2, the kernel of A^H A."""
    a = abs(m)
    return a + (n - a) * (n + a + 2) // 2


def apply_normal_operator(gamma: CoefficientAggregate, max_degree: int | None = None) -> CoefficientAggregate:
    """A^H A = A+^H A+ + A-^H A- in closed form.

    (A^H A gamma)_n^m = 4(n+1) sum_{n'} B^m_{min(n, n')} gamma_{n'}^m, for
    n = |m|(2)``max_degree`` (default ``gamma.max_degree``).
    """
    top_out = gamma.max_degree if max_degree is None else max_degree
    out = {}
    for m in gamma.orders():
        col = sorted(gamma.column(m).items())
        for n in range(abs(m), top_out + 1, 2):
            total = sum(normal_kernel(min(n, k), m) * v for k, v in col)
            if total != 0:
                out[(m, n)] = 4 * (n + 1) * total
    return CoefficientAggregate(out, top_out)
