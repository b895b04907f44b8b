"""Monte Carlo harness: sweeps over (n, mu, eps, distribution) cells,
runs the estimators against the exact oracle, and measures the
statistical quantities the estimators' analysis relies on.

Reproducibility: the seed of trial ``i`` in cell ``c`` is
``mix64(mix64(base + (c+1)*GOLDEN) + (i+1)*SILVER)`` (splitmix64
finalizer, documented constants below), so any record can be regenerated
from its (base seed, cell, trial) coordinates alone, independent of
execution order and thread count.  Per-trial capacity failures become
records carrying an error tag instead of aborting the sweep.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .approximate import approx_ptas, approx_simple, approx_truncated, default_config
from .coefficients import coefficients_interpolation, truncated_series
from .distributions import (
    GOLDEN,
    EntryDistribution,
    builtin_distribution,
    centered_matrix,
    mix64,
    sample_matrix,
)
from .exact import (
    RYSER_MAX_N,
    CapacityError,
    normalized_permanent_of_J_plus_zA,
    permanent_ryser,
)
from .hermite import SurrogateInputs, vprime_sequence
from .logcomplex import LogComplex, relative_error
from .symmetric import compute_V_D

SILVER = np.uint64(0xD1B54A32D192ED03)

# Exponent for the |D_k| <= n^{-DELTA*k} decay diagnostic.
DELTA = 0.15

ALGORITHMS = ("truncated", "simple", "ptas")
DIAGNOSTIC_NAMES = ("abs_v1", "d2_gap", "dk_scaled_max", "tail_abs", "vk_vprime_gap")

CSV_BASE_COLUMNS = [
    "seed", "n", "mu_re", "mu_im", "dist", "eps", "algorithm",
    "log_mag", "phase", "exact_log_mag", "exact_phase", "rel_error",
]


def mix_seed(base_seed: int, cell_index: int, trial_index: int) -> int:
    """Collision-resistant 64-bit seed for one trial of one grid cell."""
    b = np.array([base_seed & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)
    c = np.array([cell_index + 1], dtype=np.uint64)
    t = np.array([trial_index + 1], dtype=np.uint64)
    stage1 = mix64(b + c * GOLDEN)
    return int(mix64(stage1 + t * SILVER)[0])


@dataclass
class TrialRecord:
    seed: int
    n: int
    mu: complex
    dist_kind: str
    eps: float
    algorithm: str
    estimate: Optional[LogComplex]
    exact: Optional[LogComplex]
    rel_error: Optional[float]
    diagnostics: dict
    error: Optional[str] = None


@dataclass
class ExperimentConfig:
    """Grid specification for one sweep.

    ``exact_oracle`` requires every n in the grid to be within the Ryser
    guard, enforced at construction.
    """

    ns: list
    mus: list
    epss: list
    dist_kinds: list
    trials: int
    base_seed: int
    algorithms: list = field(default_factory=lambda: ["simple"])
    diagnostics: list = field(default_factory=list)
    exact_oracle: bool = False
    checks: list = field(default_factory=list)

    def __post_init__(self):
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}; expected one of {ALGORITHMS}")
        for d in self.diagnostics:
            if d not in DIAGNOSTIC_NAMES:
                raise ValueError(f"unknown diagnostic {d!r}; expected one of {DIAGNOSTIC_NAMES}")
        if self.exact_oracle:
            for n in self.ns:
                if n > RYSER_MAX_N:
                    raise ValueError(
                        f"exact_oracle requires every n within the Ryser guard "
                        f"({RYSER_MAX_N}); got n = {n}"
                    )
        if self.trials < 0:
            raise ValueError("trials must be >= 0")

    @property
    def cells(self) -> list:
        return list(itertools.product(self.ns, self.mus, self.epss, self.dist_kinds))

    @staticmethod
    def from_json(obj: dict) -> "ExperimentConfig":
        def as_complex_list(values):
            out = []
            for v in values:
                out.append(complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v))
            return out

        return ExperimentConfig(
            ns=[int(n) for n in obj["n"]],
            mus=as_complex_list(obj["mu"]),
            epss=[float(e) for e in obj["eps"]],
            dist_kinds=list(obj["dist"]),
            trials=int(obj["trials"]),
            base_seed=int(obj["base_seed"]),
            algorithms=list(obj.get("algorithms", ["simple"])),
            diagnostics=list(obj.get("diagnostics", [])),
            exact_oracle=bool(obj.get("exact_oracle", False)),
            checks=list(obj.get("checks", [])),
        )


def _trial_diagnostics(A, dist: EntryDistribution, mu: complex, eps: float,
                       wanted: list, exact: Optional[LogComplex]) -> dict:
    n = A.shape[0]
    diags: dict = {}
    if not wanted:
        return diags
    z = 1.0 / mu if mu != 0 else None
    t = default_config(eps).t(n)
    m = min(n, max(10, t))
    stats = compute_V_D(A, m)
    v1 = complex(stats.V[1])
    if "abs_v1" in wanted:
        diags["abs_v1"] = abs(v1)
    if "d2_gap" in wanted and m >= 2:
        diags["d2_gap"] = abs(complex(stats.D[2]) - complex(dist.xi))
    if "dk_scaled_max" in wanted and m >= 3:
        ks = range(3, min(10, m) + 1)
        diags["dk_scaled_max"] = max(abs(complex(stats.D[k])) * n ** (DELTA * k) for k in ks)
    if "vk_vprime_gap" in wanted and z is not None:
        mt = min(t, n)
        vp = vprime_sequence(SurrogateInputs(v1, complex(dist.xi), z), mt, check=False)
        diags["vk_vprime_gap"] = float(
            sum(abs(stats.V[k] - vp[k]) * abs(z) ** k for k in range(mt + 1))
        )
    if "tail_abs" in wanted and z is not None and n <= RYSER_MAX_N:
        series = coefficients_interpolation(A)
        partial = truncated_series(series, z, min(t, n))
        q_exact = normalized_permanent_of_J_plus_zA(A, z)
        diags["tail_abs"] = abs(q_exact - partial)
    return diags


def _run_one(cfg: ExperimentConfig, cell_index: int, trial_index: int) -> list:
    n, mu, eps, kind = cfg.cells[cell_index]
    seed = mix_seed(cfg.base_seed, cell_index, trial_index)
    records = []
    try:
        dist = builtin_distribution(kind, mu)
        sample = sample_matrix(dist, n, seed)
        R, A = sample.matrix, centered_matrix(sample)
        exact = permanent_ryser(R) if cfg.exact_oracle else None
        diags = _trial_diagnostics(A, dist, mu, eps, cfg.diagnostics, exact)
    except (CapacityError, ValueError) as e:
        return [
            TrialRecord(seed, n, mu, kind, eps, alg, None, None, None, {}, error=str(e))
            for alg in cfg.algorithms
        ]
    for alg in cfg.algorithms:
        try:
            if alg == "truncated":
                est = approx_truncated(R, mu, default_config(eps))
            elif alg == "simple":
                est = approx_simple(R, mu, dist.xi)
            else:
                est = approx_ptas(R, mu, dist.xi, default_config(eps))
            rel = relative_error(est.value, exact) if exact is not None else None
            records.append(
                TrialRecord(seed, n, mu, kind, eps, alg, est.value, exact, rel, diags)
            )
        except (CapacityError, ValueError) as e:
            records.append(
                TrialRecord(seed, n, mu, kind, eps, alg, None, exact, None, diags, error=str(e))
            )
    return records


def run_experiment(cfg: ExperimentConfig, threads: int = 1, progress: bool = False) -> list:
    """All trial records, ordered by (cell, trial, algorithm).

    Results are identical for any thread count: every trial is a pure
    function of its mixed seed.
    """
    tasks = [(c, i) for c in range(len(cfg.cells)) for i in range(cfg.trials)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda ct: _run_one(cfg, *ct), tasks))
    else:
        chunks = []
        for idx, (c, i) in enumerate(tasks):
            chunks.append(_run_one(cfg, c, i))
            if progress and (idx + 1) % 25 == 0:
                print(f"  {idx + 1}/{len(tasks)} trials", file=sys.stderr)
    return [rec for chunk in chunks for rec in chunk]


# ---------------------------------------------------------------------------
# Result serialization
# ---------------------------------------------------------------------------

def _lc_to_json(lc: Optional[LogComplex]):
    if lc is None:
        return None
    return {"log_mag": lc.log_mag, "phase": lc.phase, "is_zero": lc.is_zero}


def _lc_from_json(obj) -> Optional[LogComplex]:
    if obj is None:
        return None
    return LogComplex(obj["log_mag"], obj["phase"], obj["is_zero"])


def record_to_json(rec: TrialRecord) -> dict:
    return {
        "seed": rec.seed,
        "n": rec.n,
        "mu_re": rec.mu.real,
        "mu_im": rec.mu.imag,
        "dist": rec.dist_kind,
        "eps": rec.eps,
        "algorithm": rec.algorithm,
        "estimate": _lc_to_json(rec.estimate),
        "exact": _lc_to_json(rec.exact),
        "rel_error": rec.rel_error,
        "diagnostics": dict(rec.diagnostics),
        "error": rec.error,
    }


def record_from_json(obj: dict) -> TrialRecord:
    return TrialRecord(
        seed=obj["seed"],
        n=obj["n"],
        mu=complex(obj["mu_re"], obj["mu_im"]),
        dist_kind=obj["dist"],
        eps=obj["eps"],
        algorithm=obj["algorithm"],
        estimate=_lc_from_json(obj["estimate"]),
        exact=_lc_from_json(obj["exact"]),
        rel_error=obj["rel_error"],
        diagnostics=dict(obj["diagnostics"]),
        error=obj["error"],
    )


def write_results(records: list, path, format: str = "csv") -> None:
    """Write records as CSV (fixed column order) or JSON (verbatim).

    CSV columns: the fixed base columns, then diag_<name> sorted by name,
    then a trailing ``error`` column for failed trials.
    """
    if format == "json":
        with open(path, "w") as fh:
            json.dump([record_to_json(r) for r in records], fh, indent=1)
        return
    if format != "csv":
        raise ValueError(f"unknown format {format!r}; expected csv or json")
    diag_keys = sorted({k for r in records for k in r.diagnostics})
    header = CSV_BASE_COLUMNS + [f"diag_{k}" for k in diag_keys] + ["error"]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in records:
            est = r.estimate
            row = [
                r.seed, r.n, r.mu.real, r.mu.imag, r.dist_kind, r.eps, r.algorithm,
                "" if est is None else est.log_mag,
                "" if est is None else est.phase,
                "" if r.exact is None else r.exact.log_mag,
                "" if r.exact is None else r.exact.phase,
                "" if r.rel_error is None else r.rel_error,
            ]
            row += [r.diagnostics.get(k, "") for k in diag_keys]
            row.append(r.error or "")
            w.writerow(row)


def read_results(path) -> list:
    """Read back a JSON results file written by write_results."""
    with open(path) as fh:
        return [record_from_json(obj) for obj in json.load(fh)]


# ---------------------------------------------------------------------------
# Config-driven checks (drive the CLI exit code)
# ---------------------------------------------------------------------------

def _check_value(records: list, check: dict) -> float:
    metric = check["metric"]
    alg = check.get("algorithm")
    recs = [r for r in records if alg is None or r.algorithm == alg]
    ok_recs = [r for r in recs if r.error is None]
    if metric == "fraction_error_free":
        return len(ok_recs) / len(recs) if recs else math.nan
    if metric == "median_rel_error":
        vals = [r.rel_error for r in ok_recs if r.rel_error is not None]
        return float(np.median(vals)) if vals else math.nan
    if metric == "fraction_within_eps":
        vals = [r for r in ok_recs if r.rel_error is not None]
        if not vals:
            return math.nan
        return sum(1 for r in vals if r.rel_error <= r.eps) / len(vals)
    if metric == "median_diag":
        key = check["key"]
        vals = [r.diagnostics[key] for r in ok_recs if key in r.diagnostics]
        return float(np.median(vals)) if vals else math.nan
    if metric == "fraction_diag_le":
        key, limit = check["key"], float(check["limit"])
        vals = [r.diagnostics[key] for r in ok_recs if key in r.diagnostics]
        if not vals:
            return math.nan
        return sum(1 for v in vals if v <= limit) / len(vals)
    if metric == "fraction_abs_v1_le_theta":
        vals = [
            (r.diagnostics["abs_v1"], math.log(math.log(r.n)))
            for r in ok_recs
            if "abs_v1" in r.diagnostics and r.n >= 3
        ]
        if not vals:
            return math.nan
        return sum(1 for v, theta in vals if v <= theta) / len(vals)
    raise ValueError(f"unknown check metric {metric!r}")


def evaluate_checks(records: list, checks: list) -> list:
    """Evaluate config checks; each result carries value/passed/acceptance."""
    results = []
    for check in checks:
        value = _check_value(records, check)
        passed = not math.isnan(value)
        if "max" in check:
            passed = passed and value <= float(check["max"])
        if "min" in check:
            passed = passed and value >= float(check["min"])
        results.append(
            {
                "name": check.get("name", check["metric"]),
                "metric": check["metric"],
                "value": value,
                "passed": bool(passed),
                "acceptance": bool(check.get("acceptance", False)),
            }
        )
    return results


# ---------------------------------------------------------------------------
# Statistical diagnostic tables
# ---------------------------------------------------------------------------

def _sampled_centered(dist: EntryDistribution, n: int, base_seed: int, trial: int):
    sample = sample_matrix(dist, n, mix_seed(base_seed, 0, trial))
    return centered_matrix(sample)


def diagnostic_ak_moments(n: int, k_max: int, trials: int, dist: EntryDistribution,
                          seed: int) -> list:
    """Empirical E[a_k] and E|a_k|^2 against the predicted 0 and 1/k!.

    One row per k in 0..k_max with the measured moments, their standard
    errors, and the predicted values.
    """
    if n > RYSER_MAX_N:
        raise CapacityError(f"a_k moments need the interpolation oracle: n = {n} > {RYSER_MAX_N}")
    if k_max > n:
        raise ValueError(f"k_max = {k_max} exceeds n = {n}")
    samples = np.empty((trials, k_max + 1), dtype=np.complex128)
    for i in range(trials):
        A = _sampled_centered(dist, n, seed, i)
        samples[i] = coefficients_interpolation(A).coeffs[: k_max + 1]
    rows = []
    for k in range(k_max + 1):
        a = samples[:, k]
        mean = complex(a.mean())
        abs2 = np.abs(a) ** 2
        se_mean = math.sqrt(float(np.mean(np.abs(a - mean) ** 2)) / trials)
        se_abs2 = float(np.std(abs2)) / math.sqrt(trials)
        rows.append(
            {
                "k": k,
                "mean_re": mean.real,
                "mean_im": mean.imag,
                "mean_abs": abs(mean),
                "se_mean": se_mean,
                "second_moment": float(abs2.mean()),
                "se_second": se_abs2,
                "pred_mean": 1.0 if k == 0 else 0.0,
                "pred_second": 1.0 / math.factorial(k),
            }
        )
    return rows


def diagnostic_tail(n: int, mu: complex, eps: float, trials: int,
                    dist: EntryDistribution, seed: int, gamma: float = 0.015) -> dict:
    """Realized truncation tails |q(z) - sum_{k<=t} a_k z^k| vs n^{-gamma} eps."""
    if n > RYSER_MAX_N:
        raise CapacityError(f"tail diagnostic needs the exact oracle: n = {n} > {RYSER_MAX_N}")
    mu = complex(mu)
    if mu == 0:
        raise ValueError("mu = 0: z = 1/mu is undefined")
    z = 1.0 / mu
    t = min(default_config(eps).t(n), n)
    bound = n ** (-gamma) * eps
    rows = []
    for i in range(trials):
        A = _sampled_centered(dist, n, seed, i)
        series = coefficients_interpolation(A)
        partial = truncated_series(series, z, t)
        q_exact = normalized_permanent_of_J_plus_zA(A, z)
        rows.append({"trial": i, "tail_abs": abs(q_exact - partial), "bound": bound})
    frac = sum(1 for r in rows if r["tail_abs"] <= r["bound"]) / trials if trials else math.nan
    return {"t": t, "bound": bound, "rows": rows, "fraction_within": frac}


def diagnostic_vk_gap(n: int, mu: complex, t: int, trials: int,
                      dist: EntryDistribution, seed: int) -> dict:
    """Gaps between the three coefficient sequences a_k, V_k, V'_k.

    Per trial: |sum (a_k - V_k) z^k| (when the exact oracle is in range
    and mu != 0), the per-k differences eps_k = |V_k - V'_k|, and
    |sum (V_k - V'_k) z^k|.  Medians are reported across trials.
    """
    mu = complex(mu)
    z = 1.0 / mu if mu != 0 else None
    m = min(t, n)
    eps_k = np.empty((trials, m + 1))
    av_gaps, vv_gaps = [], []
    rows = []
    for i in range(trials):
        A = _sampled_centered(dist, n, seed, i)
        stats = compute_V_D(A, m)
        vp = vprime_sequence(
            SurrogateInputs(complex(stats.V[1]), complex(dist.xi), z if z is not None else 0j),
            m, check=False,
        )
        eps_k[i] = np.abs(stats.V[: m + 1] - vp)
        row = {"trial": i, "eps_k": eps_k[i].tolist(), "av_gap": None, "vv_gap": None}
        if z is not None:
            row["vv_gap"] = abs(sum((stats.V[k] - vp[k]) * z**k for k in range(m + 1)))
            vv_gaps.append(row["vv_gap"])
            if n <= RYSER_MAX_N:
                series = coefficients_interpolation(A)
                row["av_gap"] = abs(
                    sum((series.coeffs[k] - stats.V[k]) * z**k for k in range(m + 1))
                )
                av_gaps.append(row["av_gap"])
        rows.append(row)
    medians = {
        "eps_k": np.median(eps_k, axis=0).tolist() if trials else [],
        "av_gap": float(np.median(av_gaps)) if av_gaps else None,
        "vv_gap": float(np.median(vv_gaps)) if vv_gaps else None,
    }
    return {"m": m, "rows": rows, "medians": medians}


def diagnostic_estimator_magnitude(n: int, mu: complex, trials: int,
                                   dist: EntryDistribution, seed: int,
                                   gamma: float = 0.015) -> dict:
    """|exp(V_1 z - xi z^2/2)| per trial against the n^{-gamma} threshold."""
    mu = complex(mu)
    if mu == 0:
        raise ValueError("mu = 0: z = 1/mu is undefined")
    z = 1.0 / mu
    threshold = n ** (-gamma)
    rows = []
    for i in range(trials):
        A = _sampled_centered(dist, n, seed, i)
        v1 = complex(A.sum()) / n
        w = v1 * z - complex(dist.xi) * z * z / 2.0
        rows.append({"trial": i, "magnitude": math.exp(w.real), "threshold": threshold})
    frac = sum(1 for r in rows if r["magnitude"] >= r["threshold"]) / trials if trials else math.nan
    return {"threshold": threshold, "rows": rows, "fraction_above": frac}
