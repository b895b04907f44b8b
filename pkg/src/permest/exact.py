"""Exact permanents: the ground-truth oracle and the PTAS fallback.

``permanent_ryser`` is the workhorse: Ryser's inclusion-exclusion with
Gray-code subset ordering, so each of the 2^n - 1 subsets costs one
column add plus one length-n product.  ``permanent_naive`` sums over all
n! permutations and exists purely as an independent oracle for small n.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from numba import njit

from .logcomplex import LogComplex
from .matrices import all_ones, as_complex_matrix

NAIVE_MAX_N = 10
RYSER_MAX_N = 30


class CapacityError(Exception):
    """A computation was refused because it exceeds a desk-scale budget."""


@njit(cache=True, nogil=True)
def _ryser_gray(M):  # pragma: no cover - exercised via permanent_ryser
    n = M.shape[0]
    row = np.zeros(n, np.complex128)
    total = 0.0 + 0.0j
    sign = 1.0  # (-1)^{|S|}; |S| changes by one per Gray step
    gray = 0
    for m in range(1, 2**n):
        j = 0
        mm = m
        while mm & 1 == 0:
            mm >>= 1
            j += 1
        bit = 1 << j
        if gray & bit:
            gray ^= bit
            for i in range(n):
                row[i] -= M[i, j]
        else:
            gray |= bit
            for i in range(n):
                row[i] += M[i, j]
        sign = -sign
        prod = 1.0 + 0.0j
        for i in range(n):
            prod *= row[i]
        total += sign * prod
    if n % 2 == 1:
        total = -total
    return total


@njit(cache=True, nogil=True)
def _ryser_gray_kahan(M):  # pragma: no cover
    # Same walk with Kahan-compensated accumulation of the outer sum.
    n = M.shape[0]
    row = np.zeros(n, np.complex128)
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    sign = 1.0
    gray = 0
    for m in range(1, 2**n):
        j = 0
        mm = m
        while mm & 1 == 0:
            mm >>= 1
            j += 1
        bit = 1 << j
        if gray & bit:
            gray ^= bit
            for i in range(n):
                row[i] -= M[i, j]
        else:
            gray |= bit
            for i in range(n):
                row[i] += M[i, j]
        sign = -sign
        prod = 1.0 + 0.0j
        for i in range(n):
            prod *= row[i]
        y = sign * prod - comp
        t = total + y
        comp = (t - total) - y
        total = t
    if n % 2 == 1:
        total = -total
    return total


def permanent_naive(M, max_n: int = NAIVE_MAX_N) -> LogComplex:
    """Permanent by direct summation over all n! permutations.

    Refuses n > max_n (default 10); factorial blowup.  Independent of the
    Ryser path by construction.
    """
    M = as_complex_matrix(M)
    n = M.shape[0]
    if n > max_n:
        raise CapacityError(f"permanent_naive refuses n = {n} > {max_n} (n! permutations)")
    rows = np.arange(n)
    total = 0.0 + 0.0j
    perms = itertools.permutations(range(n))
    while True:
        chunk = list(itertools.islice(perms, 20000))
        if not chunk:
            break
        idx = np.array(chunk, dtype=np.intp)
        total += M[rows, idx].prod(axis=1).sum()
    return LogComplex.from_complex(total)


def permanent_ryser(M, max_n: int = RYSER_MAX_N, compensated: bool = False) -> LogComplex:
    """Permanent via Ryser's formula with Gray-code row-sum updates.

    O(2^n * n) complex operations; the guard (default n <= 30) keeps one
    call at roughly desk scale.  ``compensated`` switches the outer
    accumulation to Kahan summation.
    """
    M = as_complex_matrix(M)
    n = M.shape[0]
    if n > max_n:
        raise CapacityError(
            f"permanent_ryser refuses n = {n} > {max_n}: 2^n subset enumeration "
            f"exceeds the configured capacity"
        )
    kernel = _ryser_gray_kahan if compensated else _ryser_gray
    return LogComplex.from_complex(kernel(M))


def permanent_ryser_complex(M, max_n: int = RYSER_MAX_N, compensated: bool = False) -> complex:
    """Ryser permanent as a plain complex, skipping the log round trip.

    Within the guard the value always fits double range; paths that go on
    to divide by n! (normalized permanents) use this to avoid the 1-ulp
    noise of an exp(log(.)) conversion.
    """
    M = as_complex_matrix(M)
    n = M.shape[0]
    if n > max_n:
        raise CapacityError(
            f"permanent_ryser refuses n = {n} > {max_n}: 2^n subset enumeration "
            f"exceeds the configured capacity"
        )
    kernel = _ryser_gray_kahan if compensated else _ryser_gray
    return complex(kernel(M))


def permanent_of_J_plus_zA(A, z: complex, max_n: int = RYSER_MAX_N) -> LogComplex:
    """Per(J + z*A) where J is the all-ones matrix, via Ryser."""
    A = as_complex_matrix(A)
    X = all_ones(A.shape[0]) + complex(z) * A
    return permanent_ryser(X, max_n=max_n)


def normalized_permanent_of_J_plus_zA(A, z: complex, max_n: int = RYSER_MAX_N) -> complex:
    """Per(J + z*A) / n! as a plain complex (exact oracle for the series)."""
    A = as_complex_matrix(A)
    n = A.shape[0]
    X = all_ones(n) + complex(z) * A
    return permanent_ryser_complex(X, max_n=max_n) / math.factorial(n)


def log_factorial(n: int) -> float:
    """ln(n!) via lgamma."""
    return math.lgamma(n + 1)
