"""Truncated variation, the play operator and Skorohod decompositions for
step functions, with Monte Carlo rate experiments."""

__version__ = "0.1.0"

from . import errors
from .errors import (
    BoundaryOrderViolation,
    HorizonMismatch,
    InsufficientData,
    InvalidExponent,
    InvalidGrid,
    InvalidSpec,
    InvalidThreshold,
    KnotRequired,
    LengthMismatch,
    NonFiniteValue,
    NonIncreasingTimes,
    OracleTooLarge,
    OutOfDomain,
    StartOutOfBand,
    TruncVarError,
)
from .play import (
    PlayResult,
    counterexample_2d,
    lipschitz_gap,
    optimal_start_search,
    play,
    play_constant,
    play_recursion,
    semigroup_check,
    skorohod_check,
    skorohod_inner_products,
)
from .processes import PathSpec, generate, sample_values
from .rates import (
    CombinationTable,
    RateReport,
    combination_experiment,
    estimate_rate,
    fit_slope,
    lemma1_experiment,
    log_grid,
)
from .stepfn import (
    DiscreteTriple,
    StepFunction,
    TimeInterval,
    evaluate,
    from_samples,
    interleave,
    read_samples_csv,
    restrict,
    shift_for_start,
    symmetrize,
    write_samples_csv,
)
from .truncated import EnvelopeResult, ab_truncated, minimal_envelope, optimal_start, switching_indices, tv_truncated
from .variation import (
    VariationProfile,
    ab_trunc_oracle,
    ab_trunc_oracle_profile,
    p_variation,
    total_variation,
    tv_trunc_oracle,
)

__all__ = [
    "PlayResult", "counterexample_2d", "lipschitz_gap", "optimal_start_search", "play", "play_constant",
    "play_recursion", "semigroup_check", "skorohod_check", "skorohod_inner_products",
    "PathSpec", "generate", "sample_values",
    "CombinationTable", "RateReport", "combination_experiment", "estimate_rate", "fit_slope",
    "lemma1_experiment", "log_grid",
    "DiscreteTriple", "StepFunction", "TimeInterval", "evaluate", "from_samples", "interleave",
    "read_samples_csv", "restrict", "shift_for_start", "symmetrize", "write_samples_csv",
    "EnvelopeResult", "ab_truncated", "minimal_envelope", "optimal_start", "switching_indices", "tv_truncated",
    "VariationProfile", "ab_trunc_oracle", "ab_trunc_oracle_profile", "p_variation", "total_variation",
    "tv_trunc_oracle",
    "errors", "BoundaryOrderViolation", "HorizonMismatch", "InsufficientData", "InvalidExponent",
    "InvalidGrid", "InvalidSpec", "InvalidThreshold", "KnotRequired", "LengthMismatch", "NonFiniteValue",
    "NonIncreasingTimes", "OracleTooLarge", "OutOfDomain", "StartOutOfBand", "TruncVarError",
]
