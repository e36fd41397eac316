"""Iso-contours of corrected OR over a stratum's sensitivity/specificity lattice.

Marching squares with linear interpolation along lattice edges; squares
touching a non-estimable lattice point are masked out. Contour levels are
the stratum's own 25th/50th/75th percentile corrected-OR values; the
minimum and maximum cells are annotated as points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import TooFewValidCells
from .synthspace import StratumResult

Point = tuple[float, float]  # (sensitivity, specificity)


@dataclass(frozen=True)
class ContourLevel:
    value: float
    polylines: tuple[tuple[Point, ...], ...]


@dataclass(frozen=True)
class PointAnnotation:
    sensitivity: float
    specificity: float
    or_qba: float


@dataclass(frozen=True)
class ContourSet:
    incidence: float
    uncorrected_or: float
    levels: tuple[ContourLevel, ...]
    minimum: PointAnnotation
    maximum: PointAnnotation


def _interp(p0: Point, v0: float, p1: Point, v1: float, level: float) -> Point:
    t = (level - v0) / (v1 - v0)
    return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))


def _segments_for_level(
    grid: np.ndarray, xs: np.ndarray, ys: np.ndarray, level: float
) -> list[tuple[Point, Point]]:
    segments: list[tuple[Point, Point]] = []
    ni, nk = grid.shape
    for i in range(ni - 1):
        for k in range(nk - 1):
            corners = grid[i, k], grid[i + 1, k], grid[i + 1, k + 1], grid[i, k + 1]
            if any(np.isnan(v) for v in corners):
                continue
            pts = (
                (xs[i], ys[k]),
                (xs[i + 1], ys[k]),
                (xs[i + 1], ys[k + 1]),
                (xs[i], ys[k + 1]),
            )
            above = [v > level for v in corners]
            case = sum(1 << j for j, flag in enumerate(above) if flag)
            if case in (0, 15):
                continue
            # crossing points on each of the four square edges, lazily
            edges = {}
            for j in range(4):
                j2 = (j + 1) % 4
                if above[j] != above[j2]:
                    edges[j] = _interp(
                        pts[j], corners[j], pts[j2], corners[j2], level
                    )
            keys = sorted(edges)
            if len(keys) == 2:
                segments.append((edges[keys[0]], edges[keys[1]]))
            elif len(keys) == 4:
                # saddle: disambiguate with the cell-center value
                center = sum(corners) / 4.0
                if (center > level) == above[0]:
                    # corners 0 and 2 connect through the center, so the
                    # contour hugs corners 1 and 3
                    segments.append((edges[0], edges[1]))
                    segments.append((edges[2], edges[3]))
                else:
                    segments.append((edges[0], edges[3]))
                    segments.append((edges[1], edges[2]))
    return segments


def _join(segments: list[tuple[Point, Point]]) -> tuple[tuple[Point, ...], ...]:
    """Chain shared-endpoint segments into polylines (greedy, deterministic)."""
    def key(p: Point):
        return (round(p[0], 12), round(p[1], 12))

    remaining = list(segments)
    polylines: list[tuple[Point, ...]] = []
    while remaining:
        a, b = remaining.pop(0)
        chain = [a, b]
        grew = True
        while grew:
            grew = False
            for idx, (p, q) in enumerate(remaining):
                if key(p) == key(chain[-1]):
                    chain.append(q)
                elif key(q) == key(chain[-1]):
                    chain.append(p)
                elif key(p) == key(chain[0]):
                    chain.insert(0, q)
                elif key(q) == key(chain[0]):
                    chain.insert(0, p)
                else:
                    continue
                remaining.pop(idx)
                grew = True
                break
        polylines.append(tuple(chain))
    return tuple(polylines)


def contour_lines(stratum: StratumResult) -> ContourSet:
    """Marching-squares iso-lines at the stratum's percentile OR levels."""
    if stratum.valid_count < 3:
        raise TooFewValidCells(
            f"{stratum.valid_count} valid cells; need at least 3"
        )
    xs = np.array(stratum.sens_axis)
    ys = np.array(stratum.spec_axis)
    grid = stratum.or_grid
    rows = {row.point: row for row in stratum.percentile_rows}
    levels = []
    for point in ("p25", "p50", "p75"):
        level = rows[point].or_qba
        segs = _segments_for_level(grid, xs, ys, level)
        levels.append(ContourLevel(level, _join(segs)))
    return ContourSet(
        incidence=stratum.scenario.incidence,
        uncorrected_or=stratum.scenario.uncorrected_or,
        levels=tuple(levels),
        minimum=PointAnnotation(
            rows["min"].sensitivity, rows["min"].specificity, rows["min"].or_qba
        ),
        maximum=PointAnnotation(
            rows["max"].sensitivity, rows["max"].specificity, rows["max"].or_qba
        ),
    )
