"""End to end: estimating Per(R) for random R with nonzero-mean entries.

Three estimators: the truncated series (quasi-polynomial, tunable t), the
one-line exp(V_1 z - xi z^2/2) estimator (linear time), and the PTAS
dispatcher that falls back to exact Ryser when eps is demanding.
"""

import numpy as np

from permest import (
    approx_ptas,
    approx_simple,
    approx_truncated,
    builtin_distribution,
    default_config,
    permanent_ryser,
    relative_error,
    sample_matrix,
)

d = builtin_distribution("real-gaussian", 1.0)
n = 14
R = sample_matrix(d, n, seed=99).matrix
exact = permanent_ryser(R)
print(f"n={n}, mu=1, real-gaussian entries; exact log|Per| = {exact.log_mag:.4f}")

print("\n== truncated series: error vs t ==")
cfg = default_config(0.2)
for t in (1, 2, 4, 6, 10, n):
    est = approx_truncated(R, 1.0, cfg, t=t)
    print(f"t={t:2d}: rel err = {relative_error(est.value, exact):.3e}")

print("\n== the simple estimator: one exponential ==")
est = approx_simple(R, 1.0, d.xi)
print(f"estimate log|P| = {est.value.log_mag:.4f}, rel err = {relative_error(est.value, exact):.3f}")

print("\n== simple estimator error drifts down with n (mu = 1) ==")
for nn in (10, 14, 18, 22):
    errs = []
    for i in range(40):
        Rn = sample_matrix(d, nn, seed=7000 + 100 * nn + i).matrix
        e = approx_simple(Rn, 1.0, d.xi)
        errs.append(relative_error(e.value, permanent_ryser(Rn)))
    print(f"n={nn}: median rel err = {np.median(errs):.3f}")

print("\n== PTAS dispatch ==")
for eps in (0.99, 1e-6):
    est = approx_ptas(R, 1.0, d.xi, default_config(eps))
    print(f"eps={eps}: -> {est.algorithm}")

print("\n== beyond exact reach: n = 300, simple estimator only ==")
R300 = sample_matrix(d, 300, seed=123).matrix
est = approx_simple(R300, 1.0, d.xi)
print(f"log|P| = {est.value.log_mag:.2f}  (300! alone has log {sum(np.log(np.arange(1, 301))):.2f})")
