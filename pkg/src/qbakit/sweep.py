"""Multidimensional QBA: dense non-differential sensitivity/specificity sweeps
over a fixed observed table, and validity-frontier location.

A sweep cell is "valid" when the corrected table supports an odds ratio,
i.e. all four corrected cells are strictly inside (0, arm total).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels
from ._kernels import STATUS_LABELS, STATUS_VALID
from .exceptions import GridTooLarge
from .tables import ObservedTable

FULL_GRID_CELL_CAP = 10_000_000
NEVER_VALID = -1.0  # frontier marker for a sensitivity row with no valid cell


@dataclass(frozen=True)
class SweepSpec:
    table: ObservedTable
    sens_min: float = 0.0
    sens_max: float = 1.0
    spec_min: float = 0.0
    spec_max: float = 1.0
    step: float = 1e-4

    def __post_init__(self) -> None:
        for lo, hi, name in (
            (self.sens_min, self.sens_max, "sensitivity"),
            (self.spec_min, self.spec_max, "specificity"),
        ):
            if not (0.0 <= lo <= hi <= 1.0):
                raise ValueError(f"{name} bounds must satisfy 0 <= min <= max <= 1")
        if self.step <= 0:
            raise ValueError("step must be positive")

    @property
    def sens_axis(self) -> np.ndarray:
        return grid_axis(self.sens_min, self.sens_max, self.step)

    @property
    def spec_axis(self) -> np.ndarray:
        return grid_axis(self.spec_min, self.spec_max, self.step)

    @property
    def cell_count(self) -> int:
        return self.sens_axis.size * self.spec_axis.size


def grid_axis(lo: float, hi: float, step: float) -> np.ndarray:
    """Inclusive axis lo + k*step, final value clamped to hi."""
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    axis = lo + np.arange(n, dtype=np.float64) * step
    axis[-1] = min(axis[-1], hi)
    return axis


@dataclass(frozen=True)
class SweepCell:
    sensitivity: float
    specificity: float
    valid: bool
    or_qba: float | None
    se_qba: float | None
    reason: str | None  # invalidity reason when not valid


@dataclass(frozen=True)
class FrontierRow:
    sensitivity: float
    min_valid_specificity: float | None  # None means "never valid"


@dataclass(frozen=True)
class ValidityFrontier:
    rows: tuple[FrontierRow, ...]
    strategy: str  # "binary" | "linear"


class SweepGrid:
    """Full-grid sweep result backed by dense arrays, row-major in sensitivity."""

    def __init__(self, sens, spec, status, or_qba, se_qba):
        self.sens_axis = sens
        self.spec_axis = spec
        self.status = status
        self.or_qba = or_qba
        self.se_qba = se_qba

    def cells(self) -> Iterator[SweepCell]:
        for i, se in enumerate(self.sens_axis):
            for k, sp in enumerate(self.spec_axis):
                st = int(self.status[i, k])
                if st == STATUS_VALID:
                    yield SweepCell(
                        float(se), float(sp), True,
                        float(self.or_qba[i, k]), float(self.se_qba[i, k]), None,
                    )
                else:
                    yield SweepCell(
                        float(se), float(sp), False, None, None, STATUS_LABELS[st]
                    )


def run_sweep(
    spec: SweepSpec,
    emit: str = "frontier_only",
    cell_cap: int = FULL_GRID_CELL_CAP,
) -> SweepGrid | ValidityFrontier:
    """Evaluate the sweep.

    emit="full_grid" returns every cell (refused above cell_cap);
    emit="frontier_only" returns the per-sensitivity minimum valid
    specificity, located by binary search over the specificity axis.
    """
    if emit == "full_grid":
        if spec.cell_count > cell_cap:
            raise GridTooLarge(
                f"{spec.cell_count} cells exceeds the cap of {cell_cap}"
            )
        t = spec.table
        status, or_qba, se_qba = _kernels.correct_grid(
            t.a, t.b, t.n_target, t.n_comparator, spec.sens_axis, spec.spec_axis
        )
        return SweepGrid(spec.sens_axis, spec.spec_axis, status, or_qba, se_qba)
    if emit == "frontier_only":
        return frontier(spec, strategy="binary")
    raise ValueError(f"unknown emit mode {emit!r}")


def _cell_valid(table: ObservedTable, se: float, sp: float) -> bool:
    st, _, _ = _kernels.correct_grid(
        table.a, table.b, table.n_target, table.n_comparator,
        np.array([se]), np.array([sp]),
    )
    return int(st[0, 0]) == STATUS_VALID


def frontier(spec: SweepSpec, strategy: str = "binary") -> ValidityFrontier:
    """Per-sensitivity minimum valid specificity.

    Binary search assumes validity is monotone in specificity. That holds
    whenever the correction denominator se - (1 - sp) is positive across
    the whole specificity window: the negative-cell condition is then a
    single specificity threshold per arm and the exceeds-total condition
    does not depend on specificity at all. Where the window dips into
    se + sp <= 1 the denominator changes sign, monotonicity is lost, and
    the row falls back to a linear scan. The linear strategy is the
    brute-force oracle; the two are compared in tests.
    """
    table = spec.table
    spec_axis = spec.spec_axis
    rows = []
    for se in spec.sens_axis:
        se = float(se)
        idx: int | None
        row_strategy = strategy
        if strategy == "binary" and float(spec_axis[0]) <= 1.0 - se:
            row_strategy = "linear"
        if row_strategy == "linear":
            st, _, _ = _kernels.correct_grid(
                table.a, table.b, table.n_target, table.n_comparator,
                np.array([se]), spec_axis,
            )
            valid = st[0] == STATUS_VALID
            idx = int(np.argmax(valid)) if valid.any() else None
        elif row_strategy == "binary":
            if not _cell_valid(table, se, float(spec_axis[-1])):
                idx = None  # monotone => nothing below the top can be valid
            else:
                lo, hi = 0, spec_axis.size - 1  # hi is known valid
                while lo < hi:
                    mid = (lo + hi) // 2
                    if _cell_valid(table, se, float(spec_axis[mid])):
                        hi = mid
                    else:
                        lo = mid + 1
                idx = lo
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        rows.append(
            FrontierRow(se, float(spec_axis[idx]) if idx is not None else None)
        )
    return ValidityFrontier(tuple(rows), strategy)
