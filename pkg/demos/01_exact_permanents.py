"""Exact permanents: the naive oracle, Ryser's formula, and log-domain output.

The permanent has no determinant-style row reduction: the naive sum walks
all n! permutations, Ryser's inclusion-exclusion gets it down to O(2^n n).
Values grow like n!, so results come back as (log-magnitude, phase) pairs.
"""

import time

import numpy as np

from permest import permanent_naive, permanent_ryser, permanent_of_J_plus_zA

rng = np.random.default_rng(1)

print("== small matrices, both methods ==")
M = np.array([[1, 2], [3, 4]], dtype=complex)
print("Per [[1,2],[3,4]]  naive:", permanent_naive(M).to_complex())
print("                   ryser:", permanent_ryser(M).to_complex())

M6 = (rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))) / np.sqrt(2)
a, b = permanent_naive(M6), permanent_ryser(M6)
print(f"random 6x6: naive={a.to_complex():.6f}, ryser={b.to_complex():.6f}")

print("\n== Per(J_n) = n! ==")
for n in (3, 5, 8, 12):
    p = permanent_ryser(np.ones((n, n)))
    print(f"n={n:2d}: Per(J) = {p.to_complex().real:.6g}")

print("\n== the J + zA family ==")
A = np.eye(2, dtype=complex)
for z in (0.0, 1.0, 2.0 - 1.0j):
    p = permanent_of_J_plus_zA(A, z)
    print(f"z={z}: Per(J + zI_2) = {p.to_complex():.6f}   (formula: (1+z)^2 + 1 = {(1+z)**2 + 1})")

print("\n== Ryser at n = 20 (2^20 subsets, Gray-code updates) ==")
M20 = rng.standard_normal((20, 20)) + 1.0
t0 = time.perf_counter()
p = permanent_ryser(M20)
dt = time.perf_counter() - t0
print(f"log|Per| = {p.log_mag:.4f}, phase = {p.phase:.4f}, computed in {dt:.2f}s")
