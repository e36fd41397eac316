"""Odds-ratio estimation with variance adjustment, plus the evaluation metrics.

Three variance methods are exposed because the literature is ambiguous about
how corrected-table standard errors should be computed:

* woolf_observed  - Woolf SE on the observed cells.
* woolf_corrected - Woolf SE on the corrected cells (the default for the
  relative-precision metric).
* delta_corrected - delta method: observed binomial variance per arm scaled
  by 1/(se + sp - 1)^2 and propagated to the corrected log odds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .exceptions import NonPositiveInput, ZeroCell
from .tables import CorrectedTable, ErrorModel, ObservedTable

Z_95 = 1.96  # fixed 95% CI multiplier


class VarianceMethod(str, Enum):
    WOOLF_OBSERVED = "woolf_observed"
    WOOLF_CORRECTED = "woolf_corrected"
    DELTA_CORRECTED = "delta_corrected"


@dataclass(frozen=True)
class EffectEstimate:
    odds_ratio: float
    log_or: float
    se_log_or: float
    ci_lower: float
    ci_upper: float
    variance_method: VarianceMethod


def _require_positive_cells(a: float, b: float, c: float, d: float) -> None:
    for name, value in (("a", a), ("b", b), ("c", c), ("d", d)):
        if value <= 0:
            raise ZeroCell(f"cell {name}={value} must be strictly positive")


def _estimate(or_value: float, se: float, method: VarianceMethod) -> EffectEstimate:
    log_or = math.log(or_value)
    return EffectEstimate(
        odds_ratio=or_value,
        log_or=log_or,
        se_log_or=se,
        ci_lower=math.exp(log_or - Z_95 * se),
        ci_upper=math.exp(log_or + Z_95 * se),
        variance_method=method,
    )


def woolf_se(a: float, b: float, c: float, d: float) -> float:
    return math.sqrt(1.0 / a + 1.0 / b + 1.0 / c + 1.0 / d)


def odds_ratio_estimate(
    table: ObservedTable,
    method: VarianceMethod = VarianceMethod.WOOLF_OBSERVED,
) -> EffectEstimate:
    """Woolf log-OR estimate of an observed table. All cells must be > 0."""
    a, b, c, d = table.a, table.b, table.c, table.d
    _require_positive_cells(a, b, c, d)
    return _estimate((a * d) / (b * c), woolf_se(a, b, c, d), method)


def delta_corrected_se(
    correction: CorrectedTable, observed: ObservedTable, errors: ErrorModel
) -> float:
    """Delta-method SE of the corrected log odds ratio.

    Per arm: var(X) = x * (1 - x/n) / (se + sp - 1)^2 where x is the
    observed positive count and X the corrected one; the contribution to
    var(log OR) is var(X) * [n / (X * (n - X))]^2. The binomial variance
    is computed as x*(n - x)/n, which avoids the cancellation in
    (1 - x/n) when x is close to n.
    """
    total = 0.0
    for x, X, n, arm in (
        (observed.a, correction.A, observed.n_target, errors.target),
        (observed.b, correction.B, observed.n_comparator, errors.comparator),
    ):
        scale = arm.sensitivity + arm.specificity - 1.0
        var_x = x * (n - x) / n / (scale * scale)
        grad = n / (X * (n - X))
        total += var_x * grad * grad
    return math.sqrt(total)


def corrected_estimate(
    correction: CorrectedTable,
    observed: ObservedTable,
    errors: ErrorModel,
    method: VarianceMethod = VarianceMethod.WOOLF_CORRECTED,
) -> EffectEstimate:
    """Effect estimate from a corrected table. Corrected cells must be > 0."""
    A, B, C, D = correction.A, correction.B, correction.C, correction.D
    _require_positive_cells(A, B, C, D)
    or_value = (A * D) / (B * C)
    if method is VarianceMethod.DELTA_CORRECTED:
        se = delta_corrected_se(correction, observed, errors)
    else:
        se = woolf_se(A, B, C, D)
    return _estimate(or_value, se, method)


def bias_difference(or_uncorrected: float, or_qba: float) -> float:
    """log(OR) - log(OR_QBA)."""
    if or_uncorrected <= 0 or or_qba <= 0:
        raise NonPositiveInput("odds ratios must be positive")
    return math.log(or_uncorrected) - math.log(or_qba)


def relative_bias(or_uncorrected: float, or_qba: float) -> float:
    """(OR - OR_QBA) / OR * 100."""
    if or_uncorrected <= 0:
        raise NonPositiveInput("uncorrected OR must be positive")
    return (or_uncorrected - or_qba) / or_uncorrected * 100.0


def relative_precision(se_uncorrected: float, se_qba: float) -> float:
    """(1/SE^2 - 1/SE_QBA^2) / (1/SE^2) * 100."""
    if se_uncorrected <= 0 or se_qba <= 0:
        raise NonPositiveInput("standard errors must be positive")
    inv_unc = 1.0 / (se_uncorrected * se_uncorrected)
    inv_qba = 1.0 / (se_qba * se_qba)
    return (inv_unc - inv_qba) / inv_unc * 100.0


@dataclass(frozen=True)
class ComparisonMetrics:
    bias_difference: float
    relative_bias_pct: float
    relative_precision_pct: float | None  # None when SEs are unavailable


def compare(
    uncorrected: EffectEstimate, corrected: EffectEstimate
) -> ComparisonMetrics:
    return ComparisonMetrics(
        bias_difference=bias_difference(uncorrected.odds_ratio, corrected.odds_ratio),
        relative_bias_pct=relative_bias(uncorrected.odds_ratio, corrected.odds_ratio),
        relative_precision_pct=relative_precision(
            uncorrected.se_log_or, corrected.se_log_or
        ),
    )
