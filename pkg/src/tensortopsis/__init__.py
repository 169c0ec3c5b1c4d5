"""Rank alternatives from criteria time series.

The package structures decision data as a third-order tensor (alternatives
x criteria x time), maps the time axis into named features, aggregates the
result with a tensor extension of TOPSIS under dual criterion and feature
weights, and explores feature-weight uncertainty with Monte Carlo rank
acceptability percentages.
"""

from .aggregation import (
    DominanceReport,
    PeriodWeightMatrix,
    additive_aggregate,
    dominates,
    rank_reversal_demo,
    rank_reversal_example,
)
from .errors import (
    DuplicateCellError,
    LengthMismatchError,
    MissingCellError,
    NegativeRemainderError,
    NegativeWeightError,
    NonFiniteValueError,
    PanelParseError,
    ShapeMismatchError,
    TensorTopsisError,
    UnknownDirectionError,
    WeightSumError,
    ZeroColumnError,
    ZeroMeanError,
)
from .features import (
    AVERAGE,
    CURRENT,
    CV,
    DEFAULT_FEATURES,
    SLOPE,
    FeatureDirection,
    FeatureExtractor,
    FeatureKind,
    FeatureTensor,
    extract,
    feature_current,
    feature_cv,
    feature_mean,
    feature_slope,
    register_feature,
    resolve_features,
    unregister_feature,
)
from .io import (
    AnalysisConfig,
    CriterionConfig,
    FeatureConfig,
    bundled_path,
    load_panel,
    save_panel,
    wide_to_long,
)
from .smaa import (
    FeatureWeightSampler,
    MostLikelyRanking,
    PercentageMatrix,
    PointWeight,
    RemainderWeight,
    SeedRecord,
    SmaaAnalysis,
    UniformWeight,
    iteration_rng,
    most_likely_ranking,
    run_smaa,
    sample_alpha,
)
from .tensor import (
    DecisionTensor,
    Direction,
    SliceKind,
    TensorSlice,
    WeightScheme,
    build_tensor,
    slice_tensor,
    validate_weights,
)
from .topsis import (
    IdealPoints,
    RankingResult,
    TensorTopsis,
    closeness,
    distances,
    ideal_points,
    normalize,
    rank,
    weigh,
)

__version__ = "0.1.0"

__all__ = [
    "AVERAGE",
    "AnalysisConfig",
    "CURRENT",
    "CV",
    "CriterionConfig",
    "DEFAULT_FEATURES",
    "DecisionTensor",
    "Direction",
    "DominanceReport",
    "DuplicateCellError",
    "FeatureConfig",
    "FeatureDirection",
    "FeatureExtractor",
    "FeatureKind",
    "FeatureTensor",
    "FeatureWeightSampler",
    "IdealPoints",
    "LengthMismatchError",
    "MissingCellError",
    "MostLikelyRanking",
    "NegativeRemainderError",
    "NegativeWeightError",
    "NonFiniteValueError",
    "PanelParseError",
    "PercentageMatrix",
    "PeriodWeightMatrix",
    "PointWeight",
    "RankingResult",
    "RemainderWeight",
    "SLOPE",
    "SeedRecord",
    "ShapeMismatchError",
    "SliceKind",
    "SmaaAnalysis",
    "TensorSlice",
    "TensorTopsis",
    "TensorTopsisError",
    "UniformWeight",
    "UnknownDirectionError",
    "WeightScheme",
    "WeightSumError",
    "ZeroColumnError",
    "ZeroMeanError",
    "additive_aggregate",
    "build_tensor",
    "bundled_path",
    "closeness",
    "distances",
    "dominates",
    "extract",
    "feature_current",
    "feature_cv",
    "feature_mean",
    "feature_slope",
    "ideal_points",
    "iteration_rng",
    "load_panel",
    "most_likely_ranking",
    "normalize",
    "rank",
    "rank_reversal_demo",
    "rank_reversal_example",
    "register_feature",
    "resolve_features",
    "run_smaa",
    "sample_alpha",
    "save_panel",
    "slice_tensor",
    "unregister_feature",
    "validate_weights",
    "weigh",
    "wide_to_long",
]
