"""Domain types for 2x2 exposure-outcome tables and error models.

Counts are reals, not integers: synthetic construction yields fractional
expected counts, and bias-corrected cells are fractional in general.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


@dataclass(frozen=True)
class ObservedTable:
    """Exposure-by-outcome 2x2 table.

    a / b are the outcome-positive counts in the target / comparator arm;
    n_target / n_comparator are the arm totals. The outcome-negative cells
    c and d are derived.
    """

    a: float
    b: float
    n_target: float
    n_comparator: float

    def __post_init__(self) -> None:
        if self.n_target <= 0 or self.n_comparator <= 0:
            raise ValueError("arm totals must be positive")
        if not (0 <= self.a <= self.n_target):
            raise ValueError(f"a={self.a} outside [0, {self.n_target}]")
        if not (0 <= self.b <= self.n_comparator):
            raise ValueError(f"b={self.b} outside [0, {self.n_comparator}]")

    @property
    def c(self) -> float:
        return self.n_target - self.a

    @property
    def d(self) -> float:
        return self.n_comparator - self.b

    def scaled(self, factor: float) -> "ObservedTable":
        """All counts and totals multiplied by a positive factor."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return ObservedTable(
            self.a * factor, self.b * factor,
            self.n_target * factor, self.n_comparator * factor,
        )

    def swapped(self) -> "ObservedTable":
        """Target and comparator arms exchanged (OR maps to 1/OR)."""
        return ObservedTable(self.b, self.a, self.n_comparator, self.n_target)

    def rounded(self) -> "ObservedTable":
        """Counts rounded to integers (round-half-even), totals unchanged."""
        return ObservedTable(
            float(round(self.a)), float(round(self.b)),
            self.n_target, self.n_comparator,
        )


@dataclass(frozen=True)
class ArmErrors:
    """Sensitivity and specificity of the outcome phenotype in one arm."""

    sensitivity: float
    specificity: float

    def __post_init__(self) -> None:
        if not (0 <= self.sensitivity <= 1):
            raise ValueError(f"sensitivity={self.sensitivity} outside [0, 1]")
        if not (0 <= self.specificity <= 1):
            raise ValueError(f"specificity={self.specificity} outside [0, 1]")

    @property
    def youden_denominator(self) -> float:
        """se - (1 - sp): the denominator of the corrected-cell formula."""
        return self.sensitivity - (1.0 - self.specificity)


class ErrorMode(str, Enum):
    NON_DIFFERENTIAL = "non_differential"
    DIFFERENTIAL = "differential"


@dataclass(frozen=True)
class ErrorModel:
    """Per-arm phenotype errors; non-differential means both arms equal."""

    target: ArmErrors
    comparator: ArmErrors
    mode: ErrorMode

    def __post_init__(self) -> None:
        if self.mode is ErrorMode.NON_DIFFERENTIAL and self.target != self.comparator:
            raise ValueError("non-differential model requires equal arm errors")

    @classmethod
    def non_differential(cls, sensitivity: float, specificity: float) -> "ErrorModel":
        arm = ArmErrors(sensitivity, specificity)
        return cls(arm, arm, ErrorMode.NON_DIFFERENTIAL)

    @classmethod
    def differential(
        cls,
        target: ArmErrors,
        comparator: ArmErrors,
    ) -> "ErrorModel":
        return cls(target, comparator, ErrorMode.DIFFERENTIAL)

    def swapped(self) -> "ErrorModel":
        return ErrorModel(self.comparator, self.target, self.mode)


class InvalidityReason(str, Enum):
    NEGATIVE_CELL = "negative_cell"
    CELL_EXCEEDS_TOTAL = "cell_exceeds_total"
    ZERO_DENOMINATOR = "zero_denominator"


@dataclass(frozen=True)
class ArmDiagnostic:
    """Why one arm of a correction failed, with the raw algebra values."""

    arm: str  # "target" | "comparator"
    numerator: float
    denominator: float
    corrected_positive: float  # nan when denominator is zero
    offending_cell: str  # "A", "C", "B" or "D"
    reason: InvalidityReason


@dataclass(frozen=True)
class CorrectedTable:
    """Bias-corrected 2x2 table; cells are reals in [0, arm total]."""

    A: float
    B: float
    n_target: float
    n_comparator: float

    @property
    def C(self) -> float:
        return self.n_target - self.A

    @property
    def D(self) -> float:
        return self.n_comparator - self.B


@dataclass(frozen=True)
class InvalidCorrection:
    """Correction produced an out-of-range cell; diagnostics per failing arm."""

    diagnostics: tuple[ArmDiagnostic, ...]

    def __post_init__(self) -> None:
        if not self.diagnostics:
            raise ValueError("invalid correction needs at least one diagnostic")

    @property
    def reasons(self) -> tuple[InvalidityReason, ...]:
        return tuple(d.reason for d in self.diagnostics)


CorrectionResult = CorrectedTable | InvalidCorrection
