"""Probabilistic reference-standard aggregation of phenotype evaluation records.

Each record pairs the evaluated algorithm's binary classification with a
reference model's case probability. Confusion-matrix cells are sums of
probabilities (not adjudicated labels), so they are reals:

    TP = sum of p over classified-positive records
    FP = sum of (1 - p) over classified-positive records
    FN = sum of p over classified-negative records
    TN = sum of (1 - p) over classified-negative records
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from typing import Iterable, TextIO

from .exceptions import EmptyClass
from .tables import ArmErrors, ErrorModel


@dataclass(frozen=True)
class EvaluationRecord:
    phenotype_positive: bool
    case_probability: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.case_probability <= 1.0):
            raise ValueError(
                f"case probability {self.case_probability} outside [0, 1]"
            )


@dataclass(frozen=True)
class ErrorEstimates:
    tp: float
    fp: float
    fn: float
    tn: float

    @property
    def sensitivity(self) -> float:
        return self.tp / (self.tp + self.fn)

    @property
    def specificity(self) -> float:
        return self.tn / (self.tn + self.fp)

    @property
    def ppv(self) -> float:
        return self.tp / (self.tp + self.fp)

    @property
    def npv(self) -> float:
        return self.tn / (self.tn + self.fn)

    def merged(self, other: "ErrorEstimates") -> "ErrorEstimates":
        """Cell-wise sum; aggregation is additive over record partitions."""
        return ErrorEstimates(
            self.tp + other.tp, self.fp + other.fp,
            self.fn + other.fn, self.tn + other.tn,
        )


def aggregate_confusion(records: Iterable[EvaluationRecord]) -> ErrorEstimates:
    """Fold records into a probabilistic confusion matrix.

    Raises EmptyClass when a rate denominator is zero, naming the
    undefined rate(s).
    """
    tp = fp = fn = tn = 0.0
    count = 0
    for rec in records:
        count += 1
        if rec.phenotype_positive:
            tp += rec.case_probability
            fp += 1.0 - rec.case_probability
        else:
            fn += rec.case_probability
            tn += 1.0 - rec.case_probability
    if count == 0:
        raise EmptyClass("no records: all rates undefined")
    undefined = [
        name
        for name, denom in (
            ("sensitivity", tp + fn),
            ("specificity", tn + fp),
            ("ppv", tp + fp),
            ("npv", tn + fn),
        )
        if denom == 0.0
    ]
    if undefined:
        raise EmptyClass(f"zero denominator for: {', '.join(undefined)}")
    return ErrorEstimates(tp=tp, fp=fp, fn=fn, tn=tn)


def to_error_model(
    target: ErrorEstimates, comparator: ErrorEstimates | None = None
) -> ErrorModel:
    """Bridge estimates into an ErrorModel for correction.

    One estimate yields a non-differential model; two yield a differential
    one. A warning is emitted when sensitivity + specificity <= 1 in either
    arm (a non-informative classifier; correction would flip signs).
    """
    arms = [target] if comparator is None else [target, comparator]
    for est in arms:
        if est.sensitivity + est.specificity <= 1.0:
            warnings.warn(
                "non-informative classifier: sensitivity + specificity <= 1",
                stacklevel=2,
            )
    if comparator is None:
        return ErrorModel.non_differential(target.sensitivity, target.specificity)
    return ErrorModel.differential(
        ArmErrors(target.sensitivity, target.specificity),
        ArmErrors(comparator.sensitivity, comparator.specificity),
    )


def read_records_csv(stream: TextIO) -> list[EvaluationRecord]:
    """Read records from a two-column CSV with a required header:
    phenotype_positive (0/1), case_probability (decimal).
    """
    reader = csv.DictReader(stream)
    required = {"phenotype_positive", "case_probability"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        raise ValueError(
            "records CSV requires header columns phenotype_positive, case_probability"
        )
    records = []
    for row in reader:
        flag = row["phenotype_positive"].strip()
        if flag not in ("0", "1"):
            raise ValueError(f"phenotype_positive must be 0 or 1, got {flag!r}")
        records.append(
            EvaluationRecord(flag == "1", float(row["case_probability"]))
        )
    return records
