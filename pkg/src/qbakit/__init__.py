"""qbakit: quantitative bias analysis for outcome misclassification in 2x2 tables.

Core algebra (correct_table, misclassify), effect estimation with variance
adjustment, dense sensitivity/specificity sweeps with validity frontiers,
synthetic grid-space evaluation, and probabilistic confusion-matrix
aggregation, behind a CLI (qbakit) and a stateless HTTP JSON service.
"""

from .correction import correct_table, misclassify, specificity_validity_threshold
from .estimation import (
    ComparisonMetrics,
    EffectEstimate,
    VarianceMethod,
    bias_difference,
    compare,
    corrected_estimate,
    odds_ratio_estimate,
    relative_bias,
    relative_precision,
)
from .exceptions import (
    EmptyClass,
    GridTooLarge,
    NoFeasibleTable,
    NonPositiveInput,
    QbaError,
    TooFewValidCells,
    ZeroCell,
)
from .phenotype import (
    ErrorEstimates,
    EvaluationRecord,
    aggregate_confusion,
    to_error_model,
)
from .sweep import SweepSpec, ValidityFrontier, frontier, run_sweep
from .synthspace import (
    ScenarioSpec,
    StratumResult,
    build_synthetic_table,
    estimable_curve,
    full_space,
    sweep_stratum,
)
from .tables import (
    ArmErrors,
    CorrectedTable,
    CorrectionResult,
    ErrorMode,
    ErrorModel,
    InvalidCorrection,
    ObservedTable,
)

__version__ = "0.1.0"

__all__ = [
    "ArmErrors",
    "ComparisonMetrics",
    "CorrectedTable",
    "CorrectionResult",
    "EffectEstimate",
    "EmptyClass",
    "ErrorEstimates",
    "ErrorMode",
    "ErrorModel",
    "EvaluationRecord",
    "GridTooLarge",
    "InvalidCorrection",
    "NoFeasibleTable",
    "NonPositiveInput",
    "ObservedTable",
    "QbaError",
    "ScenarioSpec",
    "StratumResult",
    "SweepSpec",
    "TooFewValidCells",
    "ValidityFrontier",
    "VarianceMethod",
    "ZeroCell",
    "aggregate_confusion",
    "bias_difference",
    "build_synthetic_table",
    "compare",
    "correct_table",
    "corrected_estimate",
    "estimable_curve",
    "frontier",
    "full_space",
    "misclassify",
    "odds_ratio_estimate",
    "relative_bias",
    "relative_precision",
    "run_sweep",
    "specificity_validity_threshold",
    "sweep_stratum",
    "to_error_model",
]
