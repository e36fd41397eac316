"""Simple (deterministic) QBA correction algebra for outcome misclassification.

The corrected outcome-positive count in an arm with observed positives x,
arm total n, sensitivity se and specificity sp is

    X = (x - n * (1 - sp)) / (se - (1 - sp))

Correction is only meaningful when every corrected cell lies inside
[0, arm total]; otherwise the inputs are mathematically invalid and the
result reports which cell broke and why.
"""

from __future__ import annotations

import math

from .tables import (
    ArmDiagnostic,
    ArmErrors,
    CorrectedTable,
    CorrectionResult,
    ErrorModel,
    InvalidCorrection,
    InvalidityReason,
    ObservedTable,
)


def _correct_arm(
    arm: str, positives: float, total: float, errors: ArmErrors
) -> tuple[float, float, float, ArmDiagnostic | None]:
    """Correct one arm; returns (numerator, denominator, corrected, diagnostic)."""
    numerator = positives - total * (1.0 - errors.specificity)
    denominator = errors.youden_denominator
    upper = "A" if arm == "target" else "B"
    lower = "C" if arm == "target" else "D"
    if denominator == 0.0:
        return numerator, denominator, math.nan, ArmDiagnostic(
            arm, numerator, denominator, math.nan, upper,
            InvalidityReason.ZERO_DENOMINATOR,
        )
    corrected = numerator / denominator
    if corrected < 0.0:
        return numerator, denominator, corrected, ArmDiagnostic(
            arm, numerator, denominator, corrected, upper,
            InvalidityReason.NEGATIVE_CELL,
        )
    if corrected > total:
        # the complement cell (total - corrected) is the one that went negative
        return numerator, denominator, corrected, ArmDiagnostic(
            arm, numerator, denominator, corrected, lower,
            InvalidityReason.CELL_EXCEEDS_TOTAL,
        )
    return numerator, denominator, corrected, None


def correct_table(observed: ObservedTable, errors: ErrorModel) -> CorrectionResult:
    """Apply misclassification correction to both arms of an observed table.

    Returns a CorrectedTable when every corrected cell lies in
    [0, arm total], otherwise an InvalidCorrection carrying per-arm
    diagnostics. Invalidity is a domain answer, not a failure.
    """
    _, _, corr_a, diag_t = _correct_arm(
        "target", observed.a, observed.n_target, errors.target
    )
    _, _, corr_b, diag_c = _correct_arm(
        "comparator", observed.b, observed.n_comparator, errors.comparator
    )
    diagnostics = tuple(d for d in (diag_t, diag_c) if d is not None)
    if diagnostics:
        return InvalidCorrection(diagnostics)
    return CorrectedTable(corr_a, corr_b, observed.n_target, observed.n_comparator)


def misclassify(true_table: ObservedTable, errors: ErrorModel) -> ObservedTable:
    """Forward misclassification model: the exact inverse of correct_table.

    Given true positive counts, produce the counts a phenotype with the
    given sensitivity/specificity would observe (expected values, so
    fractional). Used as an independent round-trip oracle in tests.
    """
    se_t, sp_t = errors.target.sensitivity, errors.target.specificity
    se_c, sp_c = errors.comparator.sensitivity, errors.comparator.specificity
    a_obs = true_table.a * se_t + (true_table.n_target - true_table.a) * (1.0 - sp_t)
    b_obs = true_table.b * se_c + (true_table.n_comparator - true_table.b) * (1.0 - sp_c)
    return ObservedTable(a_obs, b_obs, true_table.n_target, true_table.n_comparator)


def specificity_validity_threshold(positives: float, arm_total: float) -> float:
    """Infimum specificity below which an arm's corrected numerator is negative.

    The corrected numerator x - n*(1 - sp) is positive iff sp > 1 - x/n.
    """
    if positives <= 0 or positives > arm_total:
        raise ValueError("positives must satisfy 0 < positives <= arm_total")
    return 1.0 - positives / arm_total
