"""Entry distributions with known moments and i.i.d. matrix sampling.

An entry distribution has complex mean ``mu``, unit variance
``E|x - mu|^2 = 1``, a declared quasi-variance ``xi = E(x - mu)^2`` (a
complex power, not a modulus) and a finite third absolute central moment
``rho``.  Matrices are sampled entry-wise from a counter-based stream, so
entry (i, j) is a pure function of (seed, i, j) and sampling is bit-exactly
reproducible regardless of iteration order or thread count.

Counter-based stream
--------------------
Word ``m`` of the stream with seed ``s`` is ``mix64(s + (m + 1) * GOLDEN)``
where ``mix64`` is the splitmix64 finalizer and ``GOLDEN`` is
0x9E3779B97F4A7C15.  Entry (i, j) of an n x n matrix consumes exactly the
two words at positions ``2*(i*n + j)`` and ``2*(i*n + j) + 1``: uniforms
are the top 53 bits scaled to [0, 1), gaussians come from the Box-Muller
transform of the two uniforms, and the sign of a Rademacher variate is the
top bit of the first word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .matrices import as_complex_matrix

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_A = np.uint64(0xBF58476D1CE4E5B9)
_MIX_B = np.uint64(0x94D049BB133111EB)

BUILTIN_KINDS = ("complex-gaussian", "real-gaussian", "shifted-rademacher")

# E|g|^3 for a standard complex gaussian (|g|^2 ~ Exp(1)) is Gamma(5/2).
RHO_COMPLEX_GAUSSIAN = 0.75 * math.sqrt(math.pi)
# E|g|^3 for a standard real gaussian.
RHO_REAL_GAUSSIAN = 2.0 * math.sqrt(2.0 / math.pi)


def mix64(z: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer on a uint64 array."""
    z = (z ^ (z >> np.uint64(30))) * _MIX_A
    z = (z ^ (z >> np.uint64(27))) * _MIX_B
    return z ^ (z >> np.uint64(31))


def stream_words(seed: int, positions: np.ndarray) -> np.ndarray:
    """Words of the counter-based stream ``seed`` at the given positions."""
    pos = np.asarray(positions, dtype=np.uint64)
    s = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    return mix64(s + (pos + np.uint64(1)) * GOLDEN)


def _to_unit(words: np.ndarray) -> np.ndarray:
    # top 53 bits -> [0, 1)
    return (words >> np.uint64(11)).astype(np.float64) * 2.0**-53


@dataclass(frozen=True)
class EntryDistribution:
    """A complex entry distribution with declared analytic moments.

    ``xi`` and ``rho`` must be supplied analytically; nothing in the
    estimator path ever estimates them from samples.  Custom (non-builtin)
    kinds must also supply ``sampler(mu, seed, counters) -> complex array``.
    """

    kind: str
    mu: complex
    xi: complex
    rho: float
    sampler: Optional[Callable] = None

    def __post_init__(self):
        if abs(self.xi) > 1.0 + 1e-12:
            raise ValueError(f"|xi| = {abs(self.xi)} exceeds the unit variance bound")
        if not (self.rho >= 0 and math.isfinite(self.rho)):
            raise ValueError(f"rho must be finite and >= 0, got {self.rho}")
        if self.kind not in BUILTIN_KINDS and self.sampler is None:
            raise ValueError(f"unknown kind {self.kind!r} requires an explicit sampler")


@dataclass(frozen=True)
class MatrixSample:
    """A sampled matrix together with everything needed to regenerate it."""

    matrix: np.ndarray
    seed: int
    dist: EntryDistribution


def builtin_distribution(kind: str, mu: complex) -> EntryDistribution:
    """One of the built-in unit-variance families, shifted by complex mu.

    complex-gaussian: mu + (g1 + i g2)/sqrt(2), g1, g2 ~ N(0,1); xi = 0.
    real-gaussian:    mu + g, g ~ N(0,1); xi = 1.
    shifted-rademacher: mu +/- 1 with probability 1/2 each; xi = 1, rho = 1.
    """
    mu = complex(mu)
    if kind == "complex-gaussian":
        return EntryDistribution(kind, mu, 0j, RHO_COMPLEX_GAUSSIAN)
    if kind == "real-gaussian":
        return EntryDistribution(kind, mu, 1.0 + 0j, RHO_REAL_GAUSSIAN)
    if kind == "shifted-rademacher":
        return EntryDistribution(kind, mu, 1.0 + 0j, 1.0)
    raise ValueError(f"unknown distribution kind {kind!r}")


def sample_entries(dist: EntryDistribution, seed: int, counters: np.ndarray) -> np.ndarray:
    """Entries at the given counters, complex128, independent of call order."""
    counters = np.asarray(counters, dtype=np.uint64)
    if dist.kind not in BUILTIN_KINDS:
        return np.asarray(dist.sampler(dist.mu, seed, counters), dtype=np.complex128)
    w0 = stream_words(seed, counters * np.uint64(2))
    if dist.kind == "shifted-rademacher":
        sign = np.where(w0 >> np.uint64(63), 1.0, -1.0)
        return dist.mu + sign.astype(np.complex128)
    w1 = stream_words(seed, counters * np.uint64(2) + np.uint64(1))
    u1 = _to_unit(w0)
    u2 = _to_unit(w1)
    r = np.sqrt(-2.0 * np.log1p(-u1))
    g1 = r * np.cos(2.0 * np.pi * u2)
    if dist.kind == "real-gaussian":
        return dist.mu + g1.astype(np.complex128)
    g2 = r * np.sin(2.0 * np.pi * u2)
    return dist.mu + (g1 + 1j * g2) / math.sqrt(2.0)


def sample_matrix(dist: EntryDistribution, n: int, seed: int) -> MatrixSample:
    """n x n matrix with i.i.d. entries; entry (i,j) uses counter i*n + j."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    counters = np.arange(n * n, dtype=np.uint64)
    entries = sample_entries(dist, seed, counters).reshape(n, n)
    return MatrixSample(as_complex_matrix(entries), int(seed), dist)


def centered_matrix(sample: MatrixSample) -> np.ndarray:
    """A = R - mu*J; entries of A have mean zero under the distribution."""
    return sample.matrix - sample.dist.mu


def dist_to_json(dist: EntryDistribution) -> dict:
    return {"kind": dist.kind, "mu_re": dist.mu.real, "mu_im": dist.mu.imag}


def dist_from_json(obj: dict) -> EntryDistribution:
    return builtin_distribution(obj["kind"], complex(obj["mu_re"], obj["mu_im"]))
