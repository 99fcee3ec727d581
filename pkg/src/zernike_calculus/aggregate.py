"""Sparse aggregates of Zernike coefficients and the ZC inner product."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

import numpy as np

from .polynomials import RadialMethod, _polar, is_valid_index, radial_eval, radial_table

__all__ = [
    "CoefficientAggregate",
    "GradientCoefficientPair",
    "inner_product",
    "norm_sq",
    "wavefront_eval",
    "realness_defect",
]


class CoefficientAggregate:
    """Immutable sparse map (m, n) -> coefficient of Z_n^m.

    Keys are ``(m, n)`` with n - |m| even and non-negative. Absent keys read
    as zero and exact zeros are never stored. ``max_degree`` is the
    truncation degree N; every stored n satisfies n <= N.

    Values may be any numbers: ints and Fractions stay exact under the
    closed-form operators, floats and complex numbers propagate as usual.
    Equality compares the coefficients only, not ``max_degree``.
    """

    __slots__ = ("_entries", "_max_degree")

    def __init__(self, entries=None, max_degree: int | None = None):
        data = {}
        items = entries.items() if entries is not None else ()
        for key, value in items:
            m, n = (int(k) for k in key)
            if not is_valid_index(n, m):
                raise ValueError(f"invalid Zernike index (m={m}, n={n})")
            if not isinstance(value, Number):
                raise TypeError(f"coefficient for {(m, n)} is not a number: {value!r}")
            if value != 0:
                data[(m, n)] = value
        top = max((n for _, n in data), default=0)
        if max_degree is None:
            max_degree = top
        elif max_degree < top:
            raise ValueError(f"entry of degree {top} exceeds max_degree={max_degree}")
        if max_degree < 0:
            raise ValueError("max_degree must be non-negative")
        self._entries = data
        self._max_degree = int(max_degree)

    @classmethod
    def basis(cls, m: int, n: int, max_degree: int | None = None, value=1):
        return cls({(m, n): value}, max_degree)

    @classmethod
    def zeros(cls, max_degree: int = 0):
        return cls(None, max_degree)

    @classmethod
    def from_dense(cls, array, max_degree: int | None = None):
        """Inverse of :meth:`to_dense`; entries at invalid positions must be zero."""
        array = np.asarray(array)
        N = array.shape[1] - 1
        if array.shape != (2 * N + 1, N + 1):
            raise ValueError(f"dense aggregate must have shape (2N+1, N+1), got {array.shape}")
        entries = {}
        for (row, n), value in np.ndenumerate(array):
            if value != 0:
                entries[(row - N, n)] = complex(value)
        return cls(entries, N if max_degree is None else max_degree)

    @property
    def max_degree(self) -> int:
        return self._max_degree

    def __getitem__(self, key):
        return self._entries.get(key, 0)

    def __contains__(self, key):
        return key in self._entries

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def items(self):
        return self._entries.items()

    def keys(self):
        return self._entries.keys()

    def values(self):
        return self._entries.values()

    def as_dict(self) -> dict:
        return dict(self._entries)

    def orders(self) -> list[int]:
        """Sorted azimuthal orders carrying at least one nonzero entry."""
        return sorted({m for m, _ in self._entries})

    def column(self, m: int) -> dict[int, object]:
        """Degree -> coefficient for one azimuthal order."""
        return {n: v for (mm, n), v in self._entries.items() if mm == m}

    def with_max_degree(self, max_degree: int) -> "CoefficientAggregate":
        return CoefficientAggregate(self._entries, max_degree)

    def truncated(self, max_degree: int) -> "CoefficientAggregate":
        kept = {k: v for k, v in self._entries.items() if k[1] <= max_degree}
        return CoefficientAggregate(kept, max_degree)

    def conj(self) -> "CoefficientAggregate":
        return CoefficientAggregate({k: v.conjugate() for k, v in self._entries.items()},
                                    self._max_degree)

    def to_dense(self) -> np.ndarray:
        """Complex array of shape (2N+1, N+1); row m + N, column n."""
        N = self._max_degree
        out = np.zeros((2 * N + 1, N + 1), dtype=complex)
        for (m, n), v in self._entries.items():
            out[m + N, n] = complex(v)
        return out

    def _combine(self, other, sign):
        if not isinstance(other, CoefficientAggregate):
            return NotImplemented
        acc = dict(self._entries)
        for k, v in other._entries.items():
            acc[k] = acc.get(k, 0) + sign * v
        return CoefficientAggregate(acc, max(self._max_degree, other._max_degree))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return CoefficientAggregate({k: -v for k, v in self._entries.items()}, self._max_degree)

    def __mul__(self, scalar):
        if not isinstance(scalar, Number):
            return NotImplemented
        return CoefficientAggregate({k: scalar * v for k, v in self._entries.items()},
                                    self._max_degree)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not isinstance(scalar, Number):
            return NotImplemented
        return CoefficientAggregate({k: v / scalar for k, v in self._entries.items()},
                                    self._max_degree)

    def __eq__(self, other):
        if isinstance(other, CoefficientAggregate):
            return self._entries == other._entries
        if isinstance(other, dict):
            return self._entries == {k: v for k, v in other.items() if v != 0}
        return NotImplemented

    __hash__ = None

    def max_abs_diff(self, other: "CoefficientAggregate") -> float:
        keys = set(self._entries) | set(other._entries)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    def allclose(self, other: "CoefficientAggregate", atol: float = 1e-12) -> bool:
        return self.max_abs_diff(other) <= atol

    def __repr__(self):
        body = ", ".join(f"{k}: {v!r}" for k, v in sorted(self._entries.items()))
        return f"CoefficientAggregate({{{body}}}, max_degree={self._max_degree})"


@dataclass(frozen=True)
class GradientCoefficientPair:
    """Aggregates of dW/dnu + i dW/dmu (``plus``) and dW/dnu - i dW/dmu (``minus``)."""

    plus: CoefficientAggregate
    minus: CoefficientAggregate

    def __post_init__(self):
        if self.plus.max_degree != self.minus.max_degree:
            raise ValueError(
                f"gradient aggregates disagree on max_degree: "
                f"{self.plus.max_degree} != {self.minus.max_degree}"
            )

    @property
    def max_degree(self) -> int:
        return self.plus.max_degree


def inner_product(a: CoefficientAggregate, b: CoefficientAggregate):
    """Sum of a_n^m conj(b_n^m) / (2(n+1)).

    The weight mirrors the disk integral of |Z_n^m|^2, so this equals the
    L2 inner product of the synthesized functions on the unit disk. Exact
    (int or Fraction) inputs give an exact result, anything else a complex.
    """
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    total = 0
    for key in small:
        if key in large:
            total += a[key] * b[key].conjugate() * Fraction(1, 2 * (key[1] + 1))
    return total if isinstance(total, (int, Fraction)) else complex(total)


def norm_sq(a: CoefficientAggregate) -> float:
    return sum(abs(v) ** 2 / (2 * (n + 1)) for (_, n), v in a.items())


def _point_arrays(points):
    if hasattr(points, "nu") and hasattr(points, "mu"):
        points = [points]
    arr = np.asarray([(p.nu, p.mu) if hasattr(p, "nu") else tuple(p) for p in points],
                     dtype=float).reshape(-1, 2)
    return arr[:, 0], arr[:, 1]


def wavefront_eval(alpha: CoefficientAggregate, points, method=RadialMethod.RECURRENCE) -> np.ndarray:
    """Synthesize W = sum alpha_n^m Z_n^m at the given points.

    ``points`` is a sequence of :class:`EvalPoint` or ``(nu, mu)`` pairs, or an
    array of shape (K, 2). Returns a complex array of length K.
    """
    nu, mu = _point_arrays(points)
    rho, theta = _polar(nu, mu)
    out = np.zeros(rho.shape, dtype=complex)
    if not len(alpha):
        return out
    method = RadialMethod(method)
    if method is RadialMethod.RECURRENCE:
        top = max(n for _, n in alpha.keys())
        table = radial_table(top, rho)
        radial = lambda n, m: table[n, m]
    else:
        radial = lambda n, m: radial_eval(n, m, rho, method)
    by_order = defaultdict(list)
    for (m, n), v in alpha.items():
        by_order[m].append((n, v))
    for m, terms in by_order.items():
        col = sum(complex(v) * radial(n, abs(m)) for n, v in terms)
        out += col * np.exp(1j * m * theta)
    return out


def realness_defect(alpha: CoefficientAggregate) -> float:
    """max |alpha_n^{-m} - conj(alpha_n^m)|; zero exactly when W is real-valued."""
    worst = 0.0
    for m, n in alpha.keys():
        worst = max(worst, abs(alpha[(-m, n)] - alpha[(m, n)].conjugate()))
    return float(worst)
