"""Report documents and CSV/JSON emission.

The CLI and the HTTP service both build their responses from the dict
builders here, so shared computations are numerically identical across
interfaces. CSV emission uses fixed, locale-independent formatting with
'.' decimals and LF line endings so outputs are byte-stable and suitable
for golden-file testing.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .contours import ContourSet
from .correction import correct_table
from .estimation import (
    ComparisonMetrics,
    EffectEstimate,
    VarianceMethod,
    compare,
    corrected_estimate,
    odds_ratio_estimate,
)
from .exceptions import ZeroCell
from .sweep import SweepGrid, ValidityFrontier
from .synthspace import StratumError, StratumResult
from .tables import CorrectedTable, ErrorModel, InvalidCorrection, ObservedTable


def estimate_to_dict(est: EffectEstimate) -> dict[str, Any]:
    return {
        "odds_ratio": est.odds_ratio,
        "log_or": est.log_or,
        "se_log_or": est.se_log_or,
        "ci_lower": est.ci_lower,
        "ci_upper": est.ci_upper,
        "variance_method": est.variance_method.value,
    }


def metrics_to_dict(metrics: ComparisonMetrics) -> dict[str, Any]:
    return {
        "bias_difference": metrics.bias_difference,
        "relative_bias_pct": metrics.relative_bias_pct,
        "relative_precision_pct": metrics.relative_precision_pct,
    }


def correction_report(
    table: ObservedTable,
    errors: ErrorModel,
    method: VarianceMethod = VarianceMethod.WOOLF_CORRECTED,
) -> dict[str, Any]:
    """Full correction document: observed estimate, correction outcome,
    corrected estimate and comparison metrics (where defined)."""
    doc: dict[str, Any] = {
        "observed": {
            "a": table.a,
            "b": table.b,
            "c": table.c,
            "d": table.d,
            "n_target": table.n_target,
            "n_comparator": table.n_comparator,
        },
        "error_model": {
            "mode": errors.mode.value,
            "target": {
                "sensitivity": errors.target.sensitivity,
                "specificity": errors.target.specificity,
            },
            "comparator": {
                "sensitivity": errors.comparator.sensitivity,
                "specificity": errors.comparator.specificity,
            },
        },
    }
    try:
        observed_est = odds_ratio_estimate(table)
        doc["observed_estimate"] = estimate_to_dict(observed_est)
    except ZeroCell as exc:
        observed_est = None
        doc["observed_estimate"] = None
        doc["observed_estimate_error"] = str(exc)

    result = correct_table(table, errors)
    if isinstance(result, InvalidCorrection):
        doc["correction"] = {
            "kind": "invalid",
            "diagnostics": [
                {
                    "arm": d.arm,
                    "numerator": d.numerator,
                    "denominator": d.denominator,
                    "corrected_positive": None
                    if d.corrected_positive != d.corrected_positive
                    else d.corrected_positive,
                    "offending_cell": d.offending_cell,
                    "reason": d.reason.value,
                }
                for d in result.diagnostics
            ],
        }
        return doc

    assert isinstance(result, CorrectedTable)
    doc["correction"] = {
        "kind": "corrected",
        "A": result.A,
        "B": result.B,
        "C": result.C,
        "D": result.D,
    }
    try:
        corrected_est = corrected_estimate(result, table, errors, method)
        doc["corrected_estimate"] = estimate_to_dict(corrected_est)
    except ZeroCell as exc:
        corrected_est = None
        doc["corrected_estimate"] = None
        doc["corrected_estimate_error"] = str(exc)
    if observed_est is not None and corrected_est is not None:
        doc["metrics"] = metrics_to_dict(compare(observed_est, corrected_est))
    else:
        doc["metrics"] = None
    return doc


def to_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------- CSV schemas

def _csv_buffer():
    buf = io.StringIO()
    return buf, csv.writer(buf, lineterminator="\n")


SWEEP_COLUMNS = ["sensitivity", "specificity", "valid", "or_qba", "se_qba", "reason"]


def sweep_grid_csv(grid: SweepGrid) -> str:
    buf, writer = _csv_buffer()
    writer.writerow(SWEEP_COLUMNS)
    for cell in grid.cells():
        writer.writerow([
            repr(cell.sensitivity),
            repr(cell.specificity),
            "1" if cell.valid else "0",
            "" if cell.or_qba is None else repr(cell.or_qba),
            "" if cell.se_qba is None else repr(cell.se_qba),
            cell.reason or "",
        ])
    return buf.getvalue()


def parse_sweep_grid_csv(text: str) -> list[dict[str, Any]]:
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append({
            "sensitivity": float(row["sensitivity"]),
            "specificity": float(row["specificity"]),
            "valid": row["valid"] == "1",
            "or_qba": float(row["or_qba"]) if row["or_qba"] else None,
            "se_qba": float(row["se_qba"]) if row["se_qba"] else None,
            "reason": row["reason"] or None,
        })
    return rows


FRONTIER_COLUMNS = ["sensitivity", "min_valid_specificity"]


def frontier_csv(frontier: ValidityFrontier) -> str:
    buf, writer = _csv_buffer()
    writer.writerow(FRONTIER_COLUMNS)
    for row in frontier.rows:
        writer.writerow([
            repr(row.sensitivity),
            "" if row.min_valid_specificity is None
            else repr(row.min_valid_specificity),
        ])
    return buf.getvalue()


STRATUM_COLUMNS = [
    "incidence", "or", "distribution_point", "or_qba", "estimable",
    "sensitivity", "specificity", "bias_difference", "relative_bias",
]


def _fmt_axis(value: float) -> str:
    return f"{value:g}"


def stratum_csv_rows(stratum: StratumResult) -> list[list[str]]:
    ip = stratum.scenario.incidence
    r = stratum.scenario.uncorrected_or
    rows = []
    for row in stratum.percentile_rows:
        rows.append([
            _fmt_axis(ip),
            _fmt_axis(r),
            row.point,
            f"{row.or_qba:.3f}",
            f"{stratum.estimable_proportion:.4f}",
            _fmt_axis(row.sensitivity),
            f"{row.specificity:.6f}",
            f"{row.bias_difference:.3f}",
            f"{row.relative_bias:.2f}",
        ])
    return rows


def stratum_csv(strata: list[StratumResult]) -> str:
    buf, writer = _csv_buffer()
    writer.writerow(STRATUM_COLUMNS)
    for stratum in strata:
        writer.writerows(stratum_csv_rows(stratum))
    return buf.getvalue()


def parse_stratum_csv(text: str) -> list[dict[str, Any]]:
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append({
            "incidence": float(row["incidence"]),
            "or": float(row["or"]),
            "distribution_point": row["distribution_point"],
            "or_qba": float(row["or_qba"]),
            "estimable": float(row["estimable"]),
            "sensitivity": float(row["sensitivity"]),
            "specificity": float(row["specificity"]),
            "bias_difference": float(row["bias_difference"]),
            "relative_bias": float(row["relative_bias"]),
        })
    return rows


ESTIMABLE_COLUMNS = ["incidence", "or", "estimable"]


def estimable_csv(curve: list[tuple[float, float, float]]) -> str:
    buf, writer = _csv_buffer()
    writer.writerow(ESTIMABLE_COLUMNS)
    for ip, r, proportion in curve:
        writer.writerow([_fmt_axis(ip), _fmt_axis(r), f"{proportion:.4f}"])
    return buf.getvalue()


def contours_to_dict(contour_set: ContourSet) -> dict[str, Any]:
    return {
        "incidence": contour_set.incidence,
        "or": contour_set.uncorrected_or,
        "levels": [
            {
                "value": level.value,
                "polylines": [
                    [[s, p] for s, p in line] for line in level.polylines
                ],
            }
            for level in contour_set.levels
        ],
        "min": {
            "sensitivity": contour_set.minimum.sensitivity,
            "specificity": contour_set.minimum.specificity,
            "or_qba": contour_set.minimum.or_qba,
        },
        "max": {
            "sensitivity": contour_set.maximum.sensitivity,
            "specificity": contour_set.maximum.specificity,
            "or_qba": contour_set.maximum.or_qba,
        },
    }


def stratum_to_dict(stratum: StratumResult) -> dict[str, Any]:
    return {
        "incidence": stratum.scenario.incidence,
        "or": stratum.scenario.uncorrected_or,
        "n_per_arm": stratum.scenario.n_per_arm,
        "realized_uncorrected_or": stratum.realized_uncorrected_or,
        "estimable": stratum.estimable_proportion,
        "valid_count": stratum.valid_count,
        "percentiles": [
            {
                "point": row.point,
                "or_qba": row.or_qba,
                "sensitivity": row.sensitivity,
                "specificity": row.specificity,
                "bias_difference": row.bias_difference,
                "relative_bias": row.relative_bias,
            }
            for row in stratum.percentile_rows
        ],
        "cells": [
            {
                "sensitivity": cell.sensitivity,
                "specificity": cell.specificity,
                "valid": cell.valid,
                "or_qba": cell.or_qba,
            }
            for cell in stratum.cells
        ],
    }


def manifest_entry(item: StratumResult | StratumError) -> dict[str, Any]:
    if isinstance(item, StratumError):
        return {
            "incidence": item.scenario.incidence,
            "or": item.scenario.uncorrected_or,
            "status": "error",
            "error": item.error,
        }
    return {
        "incidence": item.scenario.incidence,
        "or": item.scenario.uncorrected_or,
        "status": "ok",
    }
