"""Laboratory for continuants with bounded partial quotients.

The package walks one chain of objects: words over a digit alphabet and
their continuants, exhaustive enumeration below a bound, the growth
exponent of the count, layered ensembles built from norm windows, the
exponential sums those ensembles generate, and the Dedekind-sum
machinery used to control correlation averages.
"""

from .continuants import (
    Alphabet,
    Mat2,
    Word,
    as_word,
    cf_value,
    concat_continuant,
    continuant,
    fibonacci,
    mirror,
    word_to_matrix,
)
from .dedekind import (
    NEAR_ZERO_C,
    calibrate_c,
    congruence_count_check,
    ded_bound_check,
    ded_sweep,
    knuth_yao_max_ratio,
    knuth_yao_ratio,
    near_zero_pair_count,
    quotient_sum,
    rho,
    s_alpha,
    sawtooth_sum,
    v_reduction_remainder,
    V,
)
from .dimension import (
    DimensionEstimate,
    ThresholdVerdict,
    estimate_delta,
    hensley_formula,
    threshold_check,
)
from .ensembles import (
    ConstantsMode,
    Ensemble,
    EnsembleLayer,
    EnsembleSchedule,
    EnsembleSplit,
    GoldenRatioReport,
    InfeasibleParameters,
    NoSplitWindow,
    PreEnsemble,
    ScheduleTooShort,
    build_omega,
    build_xi,
    fibonacci_index,
    golden_ratio_check,
    measure_norm_windows,
    schedule,
    split,
    verify_split_reconstruction,
    verify_unique_expansion,
)
from .enumeration import (
    DenominatorTable,
    EnumerationQuery,
    WindowReport,
    count_FA,
    count_grid,
    count_words,
    denominator_set,
    density,
    enumerate_bounded,
    verify_hensley_window,
)
from .expsum import (
    ArcFamily,
    ArcPoint,
    PoissonReport,
    Spectrum,
    density_lower_bound,
    dirichlet_decompose,
    eval_S,
    kernel_S,
    kernel_S2,
    kernel_T,
    nine_domain_report,
    parseval,
    poisson_check,
    spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "ArcFamily",
    "ArcPoint",
    "ConstantsMode",
    "DenominatorTable",
    "DimensionEstimate",
    "Ensemble",
    "EnsembleLayer",
    "EnsembleSchedule",
    "EnsembleSplit",
    "EnumerationQuery",
    "GoldenRatioReport",
    "InfeasibleParameters",
    "Mat2",
    "NEAR_ZERO_C",
    "NoSplitWindow",
    "PoissonReport",
    "PreEnsemble",
    "ScheduleTooShort",
    "Spectrum",
    "ThresholdVerdict",
    "V",
    "WindowReport",
    "Word",
    "as_word",
    "build_omega",
    "build_xi",
    "calibrate_c",
    "cf_value",
    "concat_continuant",
    "congruence_count_check",
    "continuant",
    "count_FA",
    "count_grid",
    "count_words",
    "ded_bound_check",
    "ded_sweep",
    "denominator_set",
    "density",
    "density_lower_bound",
    "dirichlet_decompose",
    "enumerate_bounded",
    "estimate_delta",
    "eval_S",
    "fibonacci",
    "fibonacci_index",
    "golden_ratio_check",
    "hensley_formula",
    "kernel_S",
    "kernel_S2",
    "kernel_T",
    "knuth_yao_max_ratio",
    "knuth_yao_ratio",
    "measure_norm_windows",
    "mirror",
    "near_zero_pair_count",
    "nine_domain_report",
    "parseval",
    "poisson_check",
    "quotient_sum",
    "rho",
    "s_alpha",
    "sawtooth_sum",
    "schedule",
    "spectrum",
    "split",
    "threshold_check",
    "v_reduction_remainder",
    "verify_hensley_window",
    "verify_split_reconstruction",
    "verify_unique_expansion",
    "word_to_matrix",
]
