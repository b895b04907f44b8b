"""Column sums and the symmetric-function estimators V_k and D_k.

For the centered matrix A the column sums are C_j = n^{-1/2} sum_i A[i,j].
The estimators are V_k = n^{-k/2} e_k(C) and D_k = n^{-k/2} S_k(C), where
e_k / S_k are the elementary symmetric polynomials and power sums.  Both
are homogeneous of degree k, so we evaluate them on C/sqrt(n) directly,
which keeps every intermediate O(1) instead of C(n,k)-sized.

D_k uses complex powers C_j^k, not moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matrices import as_complex_matrix


@dataclass
class ColumnStats:
    n: int
    C: np.ndarray  # n column sums
    V: np.ndarray  # V_0..V_m
    D: np.ndarray  # D_0..D_m (D_0 = n by the S_0 = n convention)


def column_sums(A) -> np.ndarray:
    A = as_complex_matrix(A)
    return A.sum(axis=0) / math.sqrt(A.shape[0])


def power_sums(xs, m: int) -> np.ndarray:
    """S_1..S_m with S_k = sum_i xs[i]^k (complex powers)."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    xs = np.asarray(xs, dtype=np.complex128)
    out = np.empty(m, dtype=np.complex128)
    p = np.ones_like(xs)
    for k in range(m):
        p = p * xs
        out[k] = p.sum()
    return out


def elementary_symmetric_direct(xs, m: int) -> np.ndarray:
    """e_0..e_m by the one-pass product recurrence on prod(1 + x_i y)."""
    xs = np.asarray(xs, dtype=np.complex128)
    if m > xs.size:
        raise ValueError(f"m = {m} exceeds the number of variables {xs.size}")
    e = np.zeros(m + 1, dtype=np.complex128)
    e[0] = 1.0
    count = 0
    for x in xs:
        count += 1
        top = min(count, m)
        for j in range(top, 0, -1):
            e[j] += x * e[j - 1]
    return e


def elementary_symmetric_newton(xs, m: int) -> np.ndarray:
    """e_0..e_m from power sums via Newton's identities:

    e_m = (1/m) * sum_{k=0}^{m-1} (-1)^k e_{m-k-1} S_{k+1}.
    """
    xs = np.asarray(xs, dtype=np.complex128)
    if m > xs.size:
        raise ValueError(f"m = {m} exceeds the number of variables {xs.size}")
    e = np.zeros(m + 1, dtype=np.complex128)
    e[0] = 1.0
    if m == 0:
        return e
    S = power_sums(xs, m)
    for mm in range(1, m + 1):
        acc = 0.0 + 0.0j
        for k in range(mm):
            acc += (-1) ** k * e[mm - k - 1] * S[k]
        e[mm] = acc / mm
    return e


def _check_v_recursion(V: np.ndarray, D: np.ndarray, rtol: float = 1e-8) -> None:
    # k V_k = V_{k-1} V_1 - V_{k-2} D_2 + sum_{i=2}^{k-1} (-1)^i V_{k-1-i} D_{i+1}
    for k in range(2, len(V)):
        rhs = V[k - 1] * V[1] - V[k - 2] * D[2]
        for i in range(2, k):
            rhs += (-1) ** i * V[k - 1 - i] * D[i + 1]
        rhs /= k
        scale = max(abs(V[k]), abs(rhs))
        if scale > 1e-250 and abs(V[k] - rhs) > rtol * scale:
            raise ArithmeticError(
                f"V-recursion self-check failed at k={k}: "
                f"direct={V[k]}, recursion={rhs}"
            )


def compute_V_D(A, m: int, check: bool = True) -> ColumnStats:
    """ColumnStats with V_0..V_m and D_0..D_m for the centered matrix A.

    The V sequence is self-checked against its Newton-identity recursion
    (relative 1e-8) unless ``check`` is disabled.
    """
    A = as_complex_matrix(A)
    n = A.shape[0]
    if m > n:
        raise ValueError(f"m = {m} exceeds the dimension n = {n}")
    C = column_sums(A)
    scaled = C / math.sqrt(n)  # homogeneity: e_k(C)/n^{k/2} = e_k(C/sqrt(n))
    V = elementary_symmetric_direct(scaled, m)
    D = np.empty(m + 1, dtype=np.complex128)
    D[0] = n
    if m >= 1:
        D[1:] = power_sums(scaled, m)
    if check and m >= 2:
        _check_v_recursion(V, D)
    return ColumnStats(n=n, C=C, V=V, D=D)
