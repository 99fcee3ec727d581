"""Closed-form inverses of the two structured matrices behind the solvers.

* the min-matrix system: (L M)^{-1} with M = (b_min(i,j)) and L the
  bidiagonal first-difference matrix is upper bidiagonal with
  a_j = 1 / (b_j - b_{j-1});
* the triangular Laplacian block C_{uk} = 4(|m|+2u+1)(|m|+k+u+2)(k+1-u),
  whose inverse is upper triangular with only three nonzero diagonals.

Dense builders and a Gaussian-elimination inverse are included to check them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .derivatives import normal_kernel

__all__ = [
    "MinMatrixSpec",
    "LaplacianMatrixSpec",
    "UpperBanded",
    "invert_LM",
    "invert_C",
    "dense_inverse",
    "min_matrix",
    "difference_matrix",
    "laplacian_block",
    "reconstruction_min_sequence",
]


@dataclass(frozen=True)
class MinMatrixSpec:
    """Sequence b_0..b_I defining M = (b_min(i,j)); b_{-1} is taken as 0."""

    b: tuple[float, ...]

    def __post_init__(self):
        b = tuple(float(x) for x in self.b)
        if not b:
            raise ValueError("b must be non-empty")
        if b[0] == 0:
            raise ValueError("b_0 = 0 makes L M singular; drop the first row and column first")
        if any(hi <= lo for lo, hi in zip(b, b[1:])):
            raise ValueError("b must be strictly increasing")
        object.__setattr__(self, "b", b)

    @property
    def size(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class LaplacianMatrixSpec:
    """Azimuthal order m and block size K + 1 of the Laplacian matrix C."""

    m: int
    K: int

    def __post_init__(self):
        if self.K < 0:
            raise ValueError("K must be non-negative")

    @classmethod
    def for_degree(cls, N: int, m: int) -> "LaplacianMatrixSpec":
        """Block for source degree <= N, i.e. K = floor((N - |m|) / 2)."""
        if abs(m) > N:
            raise ValueError(f"|m|={abs(m)} exceeds N={N}")
        return cls(m, (N - abs(m)) // 2)


@dataclass(frozen=True)
class UpperBanded:
    """Upper triangular band matrix; ``bands[k]`` is the k-th superdiagonal."""

    bands: tuple[np.ndarray, ...]

    @property
    def size(self) -> int:
        return len(self.bands[0])

    def to_dense(self) -> np.ndarray:
        n = self.size
        out = np.zeros((n, n))
        for k, band in enumerate(self.bands):
            if len(band):
                out += np.diag(band, k)
        return out

    def __matmul__(self, vec):
        vec = np.asarray(vec)
        if vec.shape[0] != self.size:
            raise ValueError(f"vector of length {vec.shape[0]} does not match size {self.size}")
        out = np.zeros(vec.shape, dtype=np.result_type(vec, float))
        for k, band in enumerate(self.bands):
            if len(band):
                out[: self.size - k] += band * vec[k:]
        return out


def invert_LM(spec) -> UpperBanded:
    """(L M)^{-1}: diagonal a_0..a_I, first superdiagonal -a_1..-a_I."""
    if not isinstance(spec, MinMatrixSpec):
        spec = MinMatrixSpec(tuple(spec))
    b = np.asarray(spec.b)
    a = 1.0 / np.diff(b, prepend=0.0)
    return UpperBanded((a, -a[1:]))


def invert_C(spec) -> UpperBanded:
    """Inverse of the Laplacian block C for azimuthal order m, size K + 1.

    (C^{-1})_{kk} = 1 / (4(|m|+2k+2)(|m|+2k+1)),
    (C^{-1})_{k,k+1} = -1 / (2(|m|+2k+2)(|m|+2k+4)),
    (C^{-1})_{k,k+2} = 1 / (4(|m|+2k+4)(|m|+2k+5)).
    """
    if not isinstance(spec, LaplacianMatrixSpec):
        spec = LaplacianMatrixSpec(*spec)
    a, K = abs(spec.m), spec.K
    k = np.arange(K + 1, dtype=float)
    diag = 1.0 / (4 * (a + 2 * k + 2) * (a + 2 * k + 1))
    sup1 = -1.0 / (2 * (a + 2 * k[:-1] + 2) * (a + 2 * k[:-1] + 4))
    sup2 = 1.0 / (4 * (a + 2 * k[:-2] + 4) * (a + 2 * k[:-2] + 5))
    return UpperBanded((diag, sup1, sup2))


def min_matrix(b) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    idx = np.arange(len(b))
    return b[np.minimum.outer(idx, idx)]


def difference_matrix(size: int) -> np.ndarray:
    """Lower bidiagonal L: ones on the diagonal, -1 just below it."""
    return np.eye(size) - np.eye(size, k=-1)


def laplacian_block(spec) -> np.ndarray:
    """Dense C with C_{uk} = 4(|m|+2u+1)(|m|+k+u+2)(k+1-u) for k >= u."""
    if not isinstance(spec, LaplacianMatrixSpec):
        spec = LaplacianMatrixSpec(*spec)
    a, K = abs(spec.m), spec.K
    u, k = np.meshgrid(np.arange(K + 1), np.arange(K + 1), indexing="ij")
    C = 4.0 * (a + 2 * u + 1) * (a + k + u + 2) * (k + 1 - u)
    return np.where(k >= u, C, 0.0)


def reconstruction_min_sequence(m: int, I: int) -> tuple[int, ...]:
    """b_j = B^m_{|m|+2j}, j = 0..I, the min-matrix of the normal equations."""
    return tuple(normal_kernel(abs(m) + 2 * j, m) for j in range(I + 1))


def dense_inverse(matrix, pivot_tol: float = 1e-14) -> np.ndarray:
    """Gauss-Jordan inverse with partial pivoting.

    Raises
    ------
    ValueError
        If a pivot falls below ``pivot_tol`` in magnitude.
    """
    A = np.array(matrix, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    aug = np.hstack([A, np.eye(n)])
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(aug[col:, col])))
        if abs(aug[pivot, col]) < pivot_tol:
            raise ValueError(f"matrix is singular to tolerance (column {col})")
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] /= aug[col, col]
        others = np.arange(n) != col
        aug[others] -= np.outer(aug[others, col], aug[col])
    return aug[:, n:]
