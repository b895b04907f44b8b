"""Probabilists' Hermite polynomials and the surrogate sequence V'_k.

``hermite_h`` evaluates h_k = He_k / k! by the stable three-term
recursion h_k = (x h_{k-1} - h_{k-2}) / k.  The surrogate sequence
solves k V'_k = V'_{k-1} V_1 - V'_{k-2} xi; its closed form is
V'_k = V_1^k / k! when xi = 0 and xi^{k/2} h_k(V_1 / sqrt(xi)) otherwise,
and the generating function sum_k V'_k z^k = exp(V_1 z - xi z^2 / 2).

The recursion is the authoritative path; the closed form exists as a
cross-check and uses the principal branch of sqrt(xi) for both factors,
which makes the product branch-independent.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .logcomplex import LogComplex, wrap_phase

EXPLICIT_MAX_K = 60


def hermite_h(k: int, x: complex) -> complex:
    """h_k(x) = He_k(x)/k! by the three-term recursion."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    x = complex(x)
    h_prev = 1.0 + 0.0j  # h_0
    if k == 0:
        return h_prev
    h = x  # h_1
    for j in range(2, k + 1):
        h_prev, h = h, (x * h - h_prev) / j
    return h


def hermite_h_all(m: int, x: complex) -> np.ndarray:
    """h_0(x)..h_m(x) in one pass of the recursion."""
    x = complex(x)
    out = np.empty(m + 1, dtype=np.complex128)
    out[0] = 1.0
    if m >= 1:
        out[1] = x
    for j in range(2, m + 1):
        out[j] = (x * out[j - 1] - out[j - 2]) / j
    return out


def hermite_h_explicit(k: int, x: complex) -> complex:
    """h_k(x) by direct summation of the explicit formula.

    h_k(x) = sum_{j=0}^{floor(k/2)} (-1)^j x^{k-2j} / (j! (k-2j)! 2^j).
    Cross-check oracle only, so it is summed in exact rational arithmetic
    (the float input taken at its exact binary value) with one rounding at
    the end: a float summation would lose ~3e-9 relative accuracy where a
    grid point sits on a near-root of He_k, and an oracle must do better
    than the method it checks.  Guarded at k <= 60.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k > EXPLICIT_MAX_K:
        raise ValueError(f"explicit formula guarded at k <= {EXPLICIT_MAX_K}, got {k}")
    x = complex(x)
    xr, xi = Fraction(x.real), Fraction(x.imag)
    powers = [(Fraction(1), Fraction(0))]
    for _ in range(k):
        pr, pi = powers[-1]
        powers.append((pr * xr - pi * xi, pr * xi + pi * xr))
    tot_r, tot_i = Fraction(0), Fraction(0)
    for j in range(k // 2 + 1):
        c = Fraction(
            -1 if j % 2 else 1,
            math.factorial(j) * math.factorial(k - 2 * j) * 2**j,
        )
        pr, pi = powers[k - 2 * j]
        tot_r += c * pr
        tot_i += c * pi
    return complex(float(tot_r), float(tot_i))


@dataclass(frozen=True)
class SurrogateInputs:
    """(V_1, xi, z) feeding the surrogate sequence and the estimator."""

    v1: complex
    xi: complex
    z: complex

    def __post_init__(self):
        if abs(self.xi) > 1.0 + 1e-12:
            raise ValueError(f"|xi| = {abs(self.xi)} exceeds the unit variance bound")


def vprime_closed_form(inp: SurrogateInputs, m: int) -> np.ndarray:
    """V'_0..V'_m from the closed form; NaN where doubles cannot hold it.

    For tiny |xi| the Hermite argument V_1/sqrt(xi) blows up while the
    xi^{k/2} prefactor vanishes; entries whose intermediate magnitudes
    leave double range are returned as NaN so callers can skip them.
    """
    out = np.empty(m + 1, dtype=np.complex128)
    v1, xi = complex(inp.v1), complex(inp.xi)
    if xi == 0:
        for k in range(m + 1):
            out[k] = cmath.exp(k * cmath.log(v1) - math.lgamma(k + 1)) if v1 != 0 else (1.0 if k == 0 else 0.0)
        return out
    s = cmath.sqrt(xi)  # principal branch, shared by both factors
    arg = v1 / s
    log_abs_arg = math.log(abs(arg)) if arg != 0 else 0.0
    # h_k(arg) overflows double range once k*log|arg| passes ~700; stop the
    # recursion there and report those entries as unrepresentable
    if arg != 0 and log_abs_arg > 0:
        k_cap = min(m, int(700.0 / log_abs_arg))
    else:
        k_cap = m
    h = hermite_h_all(k_cap, arg)
    for k in range(m + 1):
        out[k] = s**k * h[k] if k <= k_cap else complex(np.nan, np.nan)
    return out


def vprime_sequence(inp: SurrogateInputs, m: int, check: bool = True) -> np.ndarray:
    """V'_0..V'_m by the recursion k V'_k = V'_{k-1} V_1 - V'_{k-2} xi.

    When ``check`` is set, the result is verified against the closed form
    wherever the latter is representable (relative 1e-8).
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    v1, xi = complex(inp.v1), complex(inp.xi)
    out = np.empty(m + 1, dtype=np.complex128)
    out[0] = 1.0
    if m >= 1:
        out[1] = v1
    for k in range(2, m + 1):
        out[k] = (out[k - 1] * v1 - out[k - 2] * xi) / k
    if check:
        cf = vprime_closed_form(inp, m)
        ok = np.isfinite(cf)
        scale = np.maximum(np.abs(out), np.abs(cf))
        bad = ok & (scale > 1e-250) & (np.abs(out - cf) > 1e-8 * scale)
        if np.any(bad):
            k = int(np.nonzero(bad)[0][0])
            raise ArithmeticError(
                f"V' closed-form self-check failed at k={k}: "
                f"recursion={out[k]}, closed form={cf[k]}"
            )
    return out


def vprime_series_sum(inp: SurrogateInputs, t: int, kmax: int = 200) -> complex:
    """Partial sum sum_{k=0}^{t} V'_k z^k (no self-check, t <= kmax)."""
    V = vprime_sequence(inp, min(t, kmax), check=False)
    z = complex(inp.z)
    acc = 0.0 + 0.0j
    for k in range(len(V) - 1, -1, -1):
        acc = acc * z + V[k]
    return acc


def closed_form_estimator(inp: SurrogateInputs) -> LogComplex:
    """exp(V_1 z - xi z^2 / 2) = sum_k V'_k z^k, as a LogComplex."""
    w = inp.v1 * inp.z - inp.xi * inp.z * inp.z / 2.0
    return LogComplex(w.real, wrap_phase(w.imag))
