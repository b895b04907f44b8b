"""Probabilists' Hermite polynomials and the surrogate sequence V'_k.

V'_k solves k V'_k = V'_{k-1} V_1 - V'_{k-2} xi.  Its closed form runs
through h_k = He_k/k!, and its generating function collapses to
exp(V_1 z - xi z^2/2) -- the whole simple estimator in one formula.
"""

import numpy as np

from permest import (
    SurrogateInputs,
    closed_form_estimator,
    hermite_h,
    hermite_h_explicit,
    vprime_closed_form,
    vprime_sequence,
)

print("== h_k by recursion vs the explicit sum ==")
for k, x in [(2, 3.0), (3, 2.0), (10, -1.5), (25, 7.0)]:
    print(f"h_{k}({x}) = {hermite_h(k, x).real: .10e}   explicit: {hermite_h_explicit(k, x).real: .10e}")

print("\n== V'_k recursion vs Hermite closed form (xi = 0.5+0.5i) ==")
inp = SurrogateInputs(v1=1.2 - 0.4j, xi=0.5 + 0.5j, z=1.0)
rec = vprime_sequence(inp, 8, check=False)
cf = vprime_closed_form(inp, 8)
for k in range(9):
    print(f"k={k}: recursion={rec[k]: .8f}   closed form={cf[k]: .8f}")

print("\n== generating function: sum_k V'_k z^k = exp(V1 z - xi z^2/2) ==")
for z in (0.5, 2.0, 1.0 + 1.0j):
    inp = SurrogateInputs(v1=0.8, xi=1.0, z=z)
    V = vprime_sequence(inp, 60, check=False)
    partial = sum(V[k] * z**k for k in range(61))
    closed = closed_form_estimator(inp).to_complex()
    print(f"z={z}: partial sum={partial:.10f}  closed={closed:.10f}  |diff|={abs(partial-closed):.1e}")

print("\n== tail decay: |sum_{k>t} V'_k z^k| at z=2, V1=2.6, xi=1 ==")
inp = SurrogateInputs(v1=2.6, xi=1.0, z=2.0)
V = vprime_sequence(inp, 200, check=False)
zp = 2.0 ** np.arange(201)
for t in (10, 20, 30, 40, 50):
    tail = abs(np.sum(V[t + 1:] * zp[t + 1:]))
    print(f"t={t}: tail = {tail:.3e}")
