"""Complex scalars stored as (log-magnitude, phase).

Permanents of n x n matrices grow like n!, whose log-magnitude is about
n ln n; for n beyond ~170 the plain float value overflows.  All permanent
values and estimates in this package are therefore carried as a
:class:`LogComplex`, which keeps the natural log of the magnitude and the
phase in radians as two ordinary doubles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

# A sum whose residual is below e**CANCEL_LOG relative to the larger operand
# is treated as exact cancellation (matches double-precision headroom).
CANCEL_LOG = -300.0

# exp() overflows just above this; used when converting back to a plain complex.
_EXP_MAX = 709.0


def wrap_phase(phi: float) -> float:
    """Reduce an angle in radians to the interval (-pi, pi]."""
    phi = math.remainder(phi, math.tau)
    if phi <= -math.pi:
        return math.pi
    return phi


@dataclass(frozen=True)
class LogComplex:
    """A nonzero complex number as (log_mag, phase), or the exact zero.

    Invariants: ``phase`` lies in (-pi, pi] unless ``is_zero``; when
    ``is_zero`` is set the other two fields are meaningless and ignored.
    Values are immutable and safe to share between threads.
    """

    log_mag: float
    phase: float
    is_zero: bool = False

    @staticmethod
    def zero() -> "LogComplex":
        return LogComplex(0.0, 0.0, True)

    @staticmethod
    def one() -> "LogComplex":
        return LogComplex(0.0, 0.0)

    @staticmethod
    def from_complex(w: complex) -> "LogComplex":
        w = complex(w)
        if w == 0:
            return LogComplex.zero()
        return LogComplex(math.log(abs(w)), cmath.phase(w))

    @staticmethod
    def from_polar_log(log_mag: float, phase: float) -> "LogComplex":
        """Build from a raw (log-magnitude, unwrapped phase) pair."""
        return LogComplex(log_mag, wrap_phase(phase))

    def to_complex(self) -> complex:
        """Plain complex value; only valid while ``|log_mag| < ~709``."""
        if self.is_zero:
            return 0j
        return cmath.rect(math.exp(self.log_mag), self.phase)

    def abs(self) -> float:
        """Magnitude as a plain float (inf if out of double range)."""
        if self.is_zero:
            return 0.0
        if self.log_mag > _EXP_MAX:
            return math.inf
        return math.exp(self.log_mag)

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        return LogComplex(
            self.log_mag + other.log_mag, wrap_phase(self.phase + other.phase)
        )

    def __truediv__(self, other: "LogComplex") -> "LogComplex":
        if other.is_zero:
            raise ZeroDivisionError("division by LogComplex zero")
        if self.is_zero:
            return LogComplex.zero()
        return LogComplex(
            self.log_mag - other.log_mag, wrap_phase(self.phase - other.phase)
        )

    def __neg__(self) -> "LogComplex":
        if self.is_zero:
            return self
        return LogComplex(self.log_mag, wrap_phase(self.phase + math.pi))

    def __add__(self, other: "LogComplex") -> "LogComplex":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        big, small = self, other
        if small.log_mag > big.log_mag:
            big, small = small, big
        dphi = wrap_phase(small.phase - big.phase)
        # Equal magnitudes at exactly opposite phases cancel exactly in this
        # representation; float cos/sin would leave a ~1e-16 ghost instead.
        if small.log_mag == big.log_mag and abs(dphi) == math.pi:
            return LogComplex.zero()
        # Factor out the larger magnitude: big * (1 + r e^{i dphi}), r <= 1,
        # so the intermediate never overflows regardless of log_mag.
        r = math.exp(small.log_mag - big.log_mag)
        w = 1.0 + r * cmath.exp(1j * dphi)
        mag = abs(w)
        if mag == 0.0 or math.log(mag) < CANCEL_LOG:
            return LogComplex.zero()
        return LogComplex(
            big.log_mag + math.log(mag), wrap_phase(big.phase + cmath.phase(w))
        )

    def __sub__(self, other: "LogComplex") -> "LogComplex":
        return self + (-other)


def log_complex_mul(a: LogComplex, b: LogComplex) -> LogComplex:
    return a * b


def log_complex_add(a: LogComplex, b: LogComplex) -> LogComplex:
    return a + b


def relative_error(estimate: LogComplex, truth: LogComplex) -> float:
    """|1 - estimate/truth|, computed in the log domain.

    Raises ZeroDivisionError when truth is zero (relative error undefined).
    """
    if truth.is_zero:
        raise ZeroDivisionError("relative error undefined: truth is zero")
    if estimate.is_zero:
        return 1.0
    diff = LogComplex.one() - estimate / truth
    return diff.abs()
