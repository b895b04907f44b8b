"""Coefficients a_k of the expansion Per(J + zA)/n! = sum_k a_k z^k.

Two independent routes:

* ``coefficient_submatrix`` sums permanents of all k x k submatrices and
  divides by the falling factorial -- the definition, one coefficient at
  a time, cost ~ C(n,k)^2 * 2^k * k.
* ``coefficients_interpolation`` evaluates the normalized permanent at
  the n+1 roots of unity and recovers the full series a_0..a_n by an
  exact inverse-DFT relation (perfectly conditioned, no linear solve).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .exact import (
    RYSER_MAX_N,
    CapacityError,
    _ryser_gray,
    normalized_permanent_of_J_plus_zA,
)
from .logcomplex import LogComplex
from .matrices import as_complex_matrix

# Upper bound on C(n,k)^2 * 2^k * k for one submatrix-route coefficient.
DEFAULT_BUDGET = 1_000_000_000


def log_falling_factorial(n: int, k: int) -> float:
    """ln of n(n-1)...(n-k+1); the empty product (k = 0) gives 0.0."""
    if k < 0 or k > n:
        raise ValueError(f"falling factorial needs 0 <= k <= n, got n={n} k={k}")
    return math.lgamma(n + 1) - math.lgamma(n - k + 1)


def submatrix_work(n: int, k: int) -> float:
    """Estimated operation count for coefficient_submatrix(A, k)."""
    return math.comb(n, k) ** 2 * 2.0**k * max(k, 1)


@njit(cache=True, nogil=True)
def _sum_submatrix_permanents(A, row_sets, col_sets):  # pragma: no cover
    k = row_sets.shape[1]
    n = A.shape[0]
    picked = np.empty((k, n), np.complex128)
    B = np.empty((k, k), np.complex128)
    total = 0.0 + 0.0j
    for r in range(row_sets.shape[0]):
        for i in range(k):
            ri = row_sets[r, i]
            for j in range(n):
                picked[i, j] = A[ri, j]
        for c in range(col_sets.shape[0]):
            for i in range(k):
                for j in range(k):
                    B[i, j] = picked[i, col_sets[c, j]]
            total += _ryser_gray(B)
    return total


@dataclass
class CoefficientSeries:
    """Coefficients a_0..a_m of the normalized permanent expansion."""

    n: int
    coeffs: np.ndarray  # complex128, length m + 1
    method: str  # "submatrix" | "interpolation"


def coefficient_submatrix(A, k: int, budget: float = DEFAULT_BUDGET) -> complex:
    """a_k as the normalized sum of permanents of all k x k submatrices."""
    A = as_complex_matrix(A)
    n = A.shape[0]
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got k={k} n={n}")
    if k == 0:
        return 1.0 + 0.0j
    work = submatrix_work(n, k)
    if work > budget:
        raise CapacityError(
            f"coefficient_submatrix(n={n}, k={k}) needs ~{work:.2e} operations, "
            f"over the budget of {budget:.0e}"
        )
    sets = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64)
    total = _sum_submatrix_permanents(A, sets, sets)
    # Normalize in log space: |a_k| is O(1) w.h.p. even when the raw sum is not.
    lc = LogComplex.from_complex(total)
    if lc.is_zero:
        return 0.0 + 0.0j
    return complex(LogComplex(lc.log_mag - log_falling_factorial(n, k), lc.phase).to_complex())


def coefficients_interpolation(A, max_n: int = RYSER_MAX_N) -> CoefficientSeries:
    """Full series a_0..a_n by evaluation at the n+1 roots of unity.

    q(z) = Per(J + zA)/n! is a degree-n polynomial, so sampling it at
    z_j = exp(2*pi*i*j/(n+1)) determines the coefficients exactly:
    a_k = (1/(n+1)) * sum_j q(z_j) z_j^{-k}, an inverse-DFT relation.
    """
    A = as_complex_matrix(A)
    n = A.shape[0]
    m = n + 1
    q = np.empty(m, dtype=np.complex128)
    for j in range(m):
        zj = np.exp(2j * np.pi * j / m)
        q[j] = normalized_permanent_of_J_plus_zA(A, zj, max_n=max_n)
    coeffs = np.fft.fft(q) / m
    if abs(coeffs[0] - 1.0) > 1e-6:
        raise ArithmeticError(
            f"interpolation lost the a_0 = 1 normalization: got {coeffs[0]}"
        )
    coeffs[0] = 1.0  # a_0 == 1 identically; drop the rounding noise
    return CoefficientSeries(n=n, coeffs=coeffs, method="interpolation")


def truncated_series(coeffs, z: complex, t: int) -> complex:
    """sum_{k=0}^{t} a_k z^k by Horner evaluation."""
    a = coeffs.coeffs if isinstance(coeffs, CoefficientSeries) else np.asarray(coeffs)
    if t < 0 or t >= len(a):
        raise ValueError(f"t = {t} outside the available coefficients 0..{len(a) - 1}")
    z = complex(z)
    acc = 0.0 + 0.0j
    for k in range(t, -1, -1):
        acc = acc * z + a[k]
    return acc
