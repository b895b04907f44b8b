"""permest: exact and average-case approximate permanents of random
complex matrices, plus a Monte Carlo harness for validating the
statistical behavior the approximations rely on.
"""

from .approximate import (
    ApproxConfig,
    Estimate,
    approx_ptas,
    approx_simple,
    approx_truncated,
    default_config,
)
from .coefficients import (
    CoefficientSeries,
    coefficient_submatrix,
    coefficients_interpolation,
    log_falling_factorial,
    truncated_series,
)
from .distributions import (
    EntryDistribution,
    MatrixSample,
    builtin_distribution,
    centered_matrix,
    dist_from_json,
    dist_to_json,
    sample_matrix,
)
from .exact import (
    CapacityError,
    NAIVE_MAX_N,
    RYSER_MAX_N,
    normalized_permanent_of_J_plus_zA,
    permanent_naive,
    permanent_of_J_plus_zA,
    permanent_ryser,
)
from .harness import (
    ExperimentConfig,
    TrialRecord,
    diagnostic_ak_moments,
    diagnostic_estimator_magnitude,
    diagnostic_tail,
    diagnostic_vk_gap,
    evaluate_checks,
    mix_seed,
    read_results,
    run_experiment,
    write_results,
)
from .hermite import (
    SurrogateInputs,
    closed_form_estimator,
    hermite_h,
    hermite_h_explicit,
    vprime_closed_form,
    vprime_sequence,
)
from .logcomplex import LogComplex, log_complex_add, log_complex_mul, relative_error
from .matrices import (
    all_ones,
    as_complex_matrix,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    save_matrix,
)
from .symmetric import (
    ColumnStats,
    column_sums,
    compute_V_D,
    elementary_symmetric_direct,
    elementary_symmetric_newton,
    power_sums,
)

__version__ = "0.1.0"
