"""The three estimators of Per(R) for R with i.i.d. entries of mean mu.

All three work through the centered matrix A = R - mu*J and the scaling
Per(R) = mu^n * Per(J + zA) with z = 1/mu:

* ``approx_truncated``: mu^n n! sum_{k<=t} a_k z^k with t ~ ln n + ln(1/eps)
  (quasi-polynomial; the headline algorithm).
* ``approx_simple``: mu^n n! exp(V_1 z - xi z^2 / 2), linear time.
* ``approx_ptas``: dispatches to the simple estimator when eps > n^{-rho}
  and otherwise falls back to the exact Ryser permanent.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coefficients import (
    DEFAULT_BUDGET,
    coefficient_submatrix,
    coefficients_interpolation,
    submatrix_work,
    truncated_series,
)
from .exact import RYSER_MAX_N, CapacityError, log_factorial, permanent_ryser
from .logcomplex import LogComplex, wrap_phase
from .matrices import as_complex_matrix

DEFAULTS = dict(c=0.10, nu=0.12, gamma=0.015, beta=0.40, rho_ptas=0.02)


@dataclass(frozen=True)
class ApproxConfig:
    """Parameter tuple (c, nu, gamma, beta, rho_ptas, eps).

    The constraint system: 0 < c < nu < 1/8, 0 < gamma < beta < 1/2,
    gamma < nu - c, 0 < rho_ptas < 1/8 - c, 0 < eps < 1.  Any tuple
    violating it is rejected at construction.
    """

    c: float
    nu: float
    gamma: float
    beta: float
    rho_ptas: float
    eps: float

    def __post_init__(self):
        constraints = [
            (0.0 < self.c < self.nu < 0.125, "0 < c < nu < 1/8"),
            (0.0 < self.gamma < self.beta < 0.5, "0 < gamma < beta < 1/2"),
            (self.gamma < self.nu - self.c, "gamma < nu - c"),
            (0.0 < self.rho_ptas < 0.125 - self.c, "0 < rho_ptas < 1/8 - c"),
            (0.0 < self.eps < 1.0, "0 < eps < 1"),
        ]
        violated = [name for ok, name in constraints if not ok]
        if violated:
            raise ValueError(f"parameter constraints violated: {', '.join(violated)}")

    def t(self, n: int) -> int:
        """Truncation order: ceil(ln n + ln(1/eps)), at least 1."""
        return max(1, math.ceil(math.log(n) + math.log(1.0 / self.eps)))

    def theta(self, n: int) -> float:
        """Concentration threshold for |V_1|: ln ln n."""
        if n < 3:
            raise ValueError("theta(n) = ln ln n needs n >= 3")
        return math.log(math.log(n))


@dataclass(frozen=True)
class Estimate:
    value: LogComplex
    algorithm: str  # "truncated" | "simple" | "exact-fallback"
    t_used: Optional[int]
    z: complex


def default_config(eps: float) -> ApproxConfig:
    """One valid solution of the constraint system, with the given eps."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return ApproxConfig(eps=eps, **DEFAULTS)


def _warn_if_z_inadmissible(z: complex, n: int, c: float) -> None:
    # The analysis assumes |z| <= (ln n)^c; desk-scale n rarely satisfies
    # this, so violations are reported but the estimate is still computed.
    if n >= 2:
        limit = math.log(n) ** c
        if abs(z) > limit:
            warnings.warn(
                f"|z| = {abs(z):.4g} exceeds the admissible (ln n)^c = {limit:.4g}; "
                f"the asymptotic guarantee does not cover this input",
                RuntimeWarning,
                stacklevel=3,
            )


def _rescale(partial: complex, mu: complex, n: int) -> LogComplex:
    """mu^n * n! * partial as a LogComplex."""
    lc = LogComplex.from_complex(partial)
    if lc.is_zero:
        return lc
    return LogComplex(
        lc.log_mag + n * math.log(abs(mu)) + log_factorial(n),
        wrap_phase(lc.phase + n * cmath.phase(complex(mu))),
    )


def approx_truncated(
    R,
    mu: complex,
    cfg: ApproxConfig,
    t: Optional[int] = None,
    budget: float = DEFAULT_BUDGET,
) -> Estimate:
    """Truncated-series estimate mu^n n! sum_{k=0}^{t} a_k z^k.

    Coefficients come from whichever route is cheaper at this (n, t):
    per-k submatrix sums, or one interpolation pass when n is within the
    Ryser guard.  ``t`` defaults to cfg.t(n) and is capped at n.
    """
    R = as_complex_matrix(R)
    mu = complex(mu)
    if mu == 0:
        raise ValueError("mu = 0: z = 1/mu is undefined")
    n = R.shape[0]
    z = 1.0 / mu
    _warn_if_z_inadmissible(z, n, cfg.c)
    t_used = min(cfg.t(n) if t is None else t, n)
    if t_used < 0:
        raise ValueError(f"t must be >= 0, got {t_used}")
    A = R - mu

    interp_work = (n + 1) * 2.0**n * n if n <= RYSER_MAX_N else math.inf
    sub_work = sum(submatrix_work(n, k) for k in range(t_used + 1))
    if min(interp_work, sub_work) > budget:
        raise CapacityError(
            f"approx_truncated(n={n}, t={t_used}): both coefficient routes exceed "
            f"the budget of {budget:.0e} (interpolation ~{interp_work:.2e}, "
            f"submatrix ~{sub_work:.2e})"
        )
    if interp_work <= sub_work:
        series = coefficients_interpolation(A)
        partial = truncated_series(series, z, t_used)
    else:
        coeffs = np.array(
            [coefficient_submatrix(A, k, budget=budget) for k in range(t_used + 1)]
        )
        partial = truncated_series(coeffs, z, t_used)
    return Estimate(_rescale(partial, mu, n), "truncated", t_used, z)


def approx_simple(R, mu: complex, xi: complex) -> Estimate:
    """Closed-form estimate mu^n n! exp(V_1 z - xi z^2 / 2); linear time.

    V_1 is the normalized entry sum of the centered matrix; xi is the
    declared quasi-variance of the entry distribution (never estimated
    from R).
    """
    R = as_complex_matrix(R)
    mu = complex(mu)
    if mu == 0:
        raise ValueError("mu = 0: z = 1/mu is undefined")
    n = R.shape[0]
    z = 1.0 / mu
    v1 = complex((R - mu).sum()) / n
    w = v1 * z - complex(xi) * z * z / 2.0
    value = LogComplex(
        w.real + n * math.log(abs(mu)) + log_factorial(n),
        wrap_phase(w.imag + n * cmath.phase(mu)),
    )
    return Estimate(value, "simple", None, z)


def approx_ptas(R, mu: complex, xi: complex, cfg: ApproxConfig, max_n: int = RYSER_MAX_N) -> Estimate:
    """PTAS dispatcher: simple estimator for eps > n^{-rho}, exact below.

    The exact branch is Ryser's 2^n formula, so it refuses matrices above
    the guard: at desk scale the paper's fallback is only available for
    small n.
    """
    R = as_complex_matrix(R)
    mu = complex(mu)
    if mu == 0:
        raise ValueError("mu = 0: z = 1/mu is undefined")
    n = R.shape[0]
    if cfg.eps > n ** (-cfg.rho_ptas):
        return approx_simple(R, mu, xi)
    if n > max_n:
        raise CapacityError(
            f"PTAS exact branch needs the 2^n Ryser fallback, and n = {n} > {max_n} "
            f"exceeds desk scale"
        )
    return Estimate(permanent_ryser(R, max_n=max_n), "exact-fallback", None, 1.0 / mu)
