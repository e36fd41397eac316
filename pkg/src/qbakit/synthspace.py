"""Synthetic grid-space construction and evaluation.

The space crosses outcome incidences with uncorrected odds ratios; each
(incidence, OR) stratum is a deterministic 2x2 table evaluated over a
20x20 lattice of sensitivity and specificity values. Specificity axes are
incidence-dependent: 1 - incidence up to exactly 1 in 20 equal increments.

Reproduction notes (tested against the published evaluation):

* Stratum tables are constructed exactly (real-valued cells) from the
  pooled-incidence quadratic, then rounded to integer counts before
  correction. Rounding is what the published results used; it is visible
  in low-incidence strata (e.g. the 9.000 minimum where the nominal OR is
  10 at incidence 1e-5).
* A lattice cell is estimable when every corrected cell is >= 1 (at least
  one whole subject per cell). With large counts this coincides with the
  no-negative-cells rule, but at incidence 1e-5 it is what yields the
  published estimable proportions (0.165 at OR=10).
* Percentile rows use the rank round-half-even(p*m) of the m valid
  corrected ORs sorted ascending, ties broken by higher specificity then
  higher sensitivity. Bias metrics compare against the realized (post-
  rounding) uncorrected OR, so the minimum row at se=sp=1 always has
  bias exactly 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .estimation import bias_difference, relative_bias
from .exceptions import NoFeasibleTable
from .tables import ObservedTable

DEFAULT_INCIDENCES = (0.1, 0.01, 0.001, 0.0001, 0.00001)
DEFAULT_ORS = (1.001, 1.25, 1.5, 2.0, 4.0, 10.0)
DEFAULT_N_PER_ARM = 1_000_000

SENSITIVITY_AXIS = tuple(0.05 * j for j in range(1, 21))

PERCENTILE_POINTS = ("min", "p25", "p50", "p75", "max")


def specificity_axis(incidence: float) -> tuple[float, ...]:
    """20 values from 1 - incidence to exactly 1, step incidence/19."""
    return tuple((1.0 - incidence) + k * incidence / 19.0 for k in range(20))


@dataclass(frozen=True)
class ScenarioSpec:
    incidence: float
    uncorrected_or: float
    n_per_arm: float = DEFAULT_N_PER_ARM

    def __post_init__(self) -> None:
        if not (0.0 < self.incidence < 1.0):
            raise ValueError("incidence must lie in (0, 1)")
        if self.uncorrected_or <= 0:
            raise ValueError("uncorrected OR must be positive")
        if self.n_per_arm <= 0:
            raise ValueError("n_per_arm must be positive")
        if self.incidence * 2.0 * self.n_per_arm < 1.0:
            raise ValueError("scenario implies less than one expected event")


def build_synthetic_table(spec: ScenarioSpec) -> ObservedTable:
    """The unique table with pooled incidence = IP and odds ratio = OR.

    Both arms have n_per_arm subjects; a + b = IP * 2 * n_per_arm and
    (a*d)/(b*c) = OR. Eliminating a leaves a quadratic in b:

        (R - 1) b^2 + (S + N + R (N - S)) b - S N = 0

    with S the pooled positives and R the odds ratio; the root with
    0 < b < N is taken. Cells are exact reals, never rounded here.
    """
    n = spec.n_per_arm
    r = spec.uncorrected_or
    s = spec.incidence * 2.0 * n
    if r == 1.0:
        b = s / 2.0
    else:
        qa = r - 1.0
        qb = s + n + r * (n - s)
        qc = -s * n
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0:
            raise NoFeasibleTable(f"no real root for {spec}")
        b = (-qb + math.sqrt(disc)) / (2.0 * qa)
    a = s - b
    if not (0.0 < b < n and 0.0 < a < n):
        raise NoFeasibleTable(f"no root in range for {spec}")
    return ObservedTable(a, b, n, n)


@dataclass(frozen=True)
class StratumCell:
    sensitivity: float
    specificity: float
    valid: bool
    or_qba: float | None


@dataclass(frozen=True)
class PercentileRow:
    point: str  # min | p25 | p50 | p75 | max
    or_qba: float
    sensitivity: float
    specificity: float
    bias_difference: float
    relative_bias: float


@dataclass(frozen=True)
class StratumResult:
    scenario: ScenarioSpec
    realized_uncorrected_or: float
    cells: tuple[StratumCell, ...]
    valid_count: int
    percentile_rows: tuple[PercentileRow, ...]
    # corrected-OR lattice (sens-major), nan where not estimable; for contours
    or_grid: np.ndarray = field(repr=False, compare=False)
    sens_axis: tuple[float, ...] = SENSITIVITY_AXIS
    spec_axis: tuple[float, ...] = ()

    @property
    def estimable_proportion(self) -> float:
        return self.valid_count / len(self.cells)


def nearest_rank(p: float, m: int) -> int:
    """1-based rank used for percentile selection: round-half-even(p*m)."""
    return min(max(round(p * m), 1), m)


def sweep_stratum(spec: ScenarioSpec, round_counts: bool = True) -> StratumResult:
    """Evaluate one stratum over its 400-cell error lattice."""
    table = build_synthetic_table(spec)
    if round_counts:
        table = table.rounded()
    a, b, n = table.a, table.b, spec.n_per_arm
    if a <= 0 or b <= 0 or a >= n or b >= n:
        raise NoFeasibleTable(f"realized table has an empty cell for {spec}")
    realized_or = (a * (n - b)) / (b * (n - a))

    sens = np.array(SENSITIVITY_AXIS)
    specs = np.array(specificity_axis(spec.incidence))
    den = sens[:, None] - (1.0 - specs[None, :])
    safe_den = np.where(den == 0.0, np.nan, den)
    A = (a - n * (1.0 - specs[None, :])) / safe_den
    B = (b - n * (1.0 - specs[None, :])) / safe_den
    with np.errstate(invalid="ignore"):
        valid = (
            (den > 0.0)
            & (A >= 1.0) & (B >= 1.0)
            & (A <= n - 1.0) & (B <= n - 1.0)
        )
    or_grid = np.full(A.shape, np.nan)
    or_grid[valid] = (A[valid] * (n - B[valid])) / (B[valid] * (n - A[valid]))

    cells = []
    ranked = []
    for i, se in enumerate(SENSITIVITY_AXIS):
        for k, sp in enumerate(specificity_axis(spec.incidence)):
            if valid[i, k]:
                orq = float(or_grid[i, k])
                cells.append(StratumCell(se, sp, True, orq))
                ranked.append((orq, -sp, -se))
            else:
                cells.append(StratumCell(se, sp, False, None))
    ranked.sort()
    m = len(ranked)

    rows = []
    if m:
        for point, p in zip(PERCENTILE_POINTS, (0.0, 0.25, 0.5, 0.75, 1.0)):
            if point == "min":
                orq, nsp, nse = ranked[0]
            elif point == "max":
                orq, nsp, nse = ranked[-1]
            else:
                orq, nsp, nse = ranked[nearest_rank(p, m) - 1]
            rows.append(
                PercentileRow(
                    point=point,
                    or_qba=orq,
                    sensitivity=-nse,
                    specificity=-nsp,
                    bias_difference=bias_difference(realized_or, orq),
                    relative_bias=relative_bias(realized_or, orq),
                )
            )
    return StratumResult(
        scenario=spec,
        realized_uncorrected_or=realized_or,
        cells=tuple(cells),
        valid_count=m,
        percentile_rows=tuple(rows),
        or_grid=or_grid,
        spec_axis=specificity_axis(spec.incidence),
    )


@dataclass(frozen=True)
class StratumError:
    scenario: ScenarioSpec
    error: str


def full_space(
    incidences=DEFAULT_INCIDENCES,
    ors=DEFAULT_ORS,
    n_per_arm: float = DEFAULT_N_PER_ARM,
    round_counts: bool = True,
) -> list[StratumResult | StratumError]:
    """All strata, incidence descending then OR ascending.

    Per-stratum failures are recorded as StratumError markers without
    aborting the rest of the space.
    """
    if not incidences or not ors:
        raise ValueError("incidence and OR axes must be non-empty")
    results: list[StratumResult | StratumError] = []
    for ip in sorted(incidences, reverse=True):
        for r in sorted(ors):
            spec = ScenarioSpec(ip, r, n_per_arm)
            try:
                results.append(sweep_stratum(spec, round_counts=round_counts))
            except NoFeasibleTable as exc:
                results.append(StratumError(spec, str(exc)))
    return results


def estimable_curve(
    space: list[StratumResult | StratumError],
) -> list[tuple[float, float, float]]:
    """(incidence, uncorrected_or, estimable_proportion) per successful stratum."""
    if not space:
        raise ValueError("space must be non-empty")
    return [
        (s.scenario.incidence, s.scenario.uncorrected_or, s.estimable_proportion)
        for s in space
        if isinstance(s, StratumResult)
    ]
