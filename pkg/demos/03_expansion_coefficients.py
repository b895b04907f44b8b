"""The expansion Per(J + zA)/n! = sum_k a_k z^k, coefficient by coefficient.

a_k is the normalized sum of permanents of all k x k submatrices of A.
Two independent routes compute it: brute-force submatrix enumeration, and
interpolation of the normalized permanent at the n+1 roots of unity.
"""

import numpy as np

from permest import (
    coefficient_submatrix,
    coefficients_interpolation,
    truncated_series,
)
from permest.exact import normalized_permanent_of_J_plus_zA

rng = np.random.default_rng(3)
n = 7
A = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)

print("== two routes to the same coefficients ==")
series = coefficients_interpolation(A)
for k in range(4):
    sub = coefficient_submatrix(A, k)
    print(f"a_{k}: submatrix={sub: .8f}   interpolation={series.coeffs[k]: .8f}")

print("\n== coefficient magnitudes decay like 1/sqrt(k!) ==")
for k in range(n + 1):
    import math
    print(f"k={k}: |a_k| = {abs(series.coeffs[k]):.5f}   1/sqrt(k!) = {1/math.sqrt(math.factorial(k)):.5f}")

print("\n== the expansion identity at arbitrary z ==")
for z in (0.5, 1.5 - 0.7j):
    full = truncated_series(series, z, n)
    exact = normalized_permanent_of_J_plus_zA(A, z)
    print(f"z={z}: series={full:.10f}  exact={exact:.10f}  |diff|={abs(full-exact):.2e}")

print("\n== truncation error shrinks with t ==")
z = 1.0
exact = normalized_permanent_of_J_plus_zA(A, z)
for t in range(n + 1):
    partial = truncated_series(series, z, t)
    print(f"t={t}: |sum_k<=t a_k z^k - exact| = {abs(partial - exact):.3e}")
