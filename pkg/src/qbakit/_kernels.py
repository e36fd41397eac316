"""Grid-evaluation kernels for sensitivity/specificity sweeps.

Two implementations of the same kernel: a numba @njit version for large
grids and a pure-numpy version. Selection: numpy when the environment
variable QBAKIT_DISABLE_NUMBA is set (any non-empty value), numba
otherwise. Both produce bit-identical arrays; tests and the benchmark in
benchmarks/bench_sweep.py compare them.

Status codes per grid cell:
    0 valid (all corrected cells strictly inside (0, arm total))
    1 negative_cell
    2 cell_exceeds_total
    3 zero_denominator
    4 zero_cell (a corrected cell sits exactly on 0 or the arm total)
"""

from __future__ import annotations

import os

import numpy as np

STATUS_VALID = 0
STATUS_NEGATIVE_CELL = 1
STATUS_CELL_EXCEEDS_TOTAL = 2
STATUS_ZERO_DENOMINATOR = 3
STATUS_ZERO_CELL = 4

STATUS_LABELS = {
    STATUS_VALID: "valid",
    STATUS_NEGATIVE_CELL: "negative_cell",
    STATUS_CELL_EXCEEDS_TOTAL: "cell_exceeds_total",
    STATUS_ZERO_DENOMINATOR: "zero_denominator",
    STATUS_ZERO_CELL: "zero_cell",
}


def _arm_status(x: float, n: float, se: float, sp: float) -> tuple[int, float]:
    """Status and corrected positive count for one arm. Pure-python reference."""
    den = se - (1.0 - sp)
    if den == 0.0:
        return STATUS_ZERO_DENOMINATOR, np.nan
    X = (x - n * (1.0 - sp)) / den
    if X < 0.0:
        return STATUS_NEGATIVE_CELL, X
    if X > n:
        return STATUS_CELL_EXCEEDS_TOTAL, X
    if X == 0.0 or X == n:
        return STATUS_ZERO_CELL, X
    return STATUS_VALID, X


def _grid_numpy(a, b, n1, n0, sens, spec):
    se = sens[:, None]
    sp = spec[None, :]
    den = se - (1.0 - sp)
    shape = (sens.size, spec.size)
    status = np.zeros(shape, dtype=np.int8)
    or_qba = np.full(shape, np.nan)
    se_qba = np.full(shape, np.nan)

    zero_den = den == 0.0
    safe_den = np.where(zero_den, 1.0, den)
    A = (a - n1 * (1.0 - sp)) / safe_den
    B = (b - n0 * (1.0 - sp)) / safe_den
    A = np.broadcast_to(A, shape)
    B = np.broadcast_to(B, shape)
    zero_den = np.broadcast_to(zero_den, shape)

    negative = (A < 0.0) | (B < 0.0)
    overflow = (A > n1) | (B > n0)
    boundary = (A == 0.0) | (A == n1) | (B == 0.0) | (B == n0)
    # precedence mirrors the scalar kernel: zero denominator wins, then
    # negative, then overflow, then boundary
    status[boundary] = STATUS_ZERO_CELL
    status[overflow] = STATUS_CELL_EXCEEDS_TOTAL
    status[negative] = STATUS_NEGATIVE_CELL
    status[zero_den] = STATUS_ZERO_DENOMINATOR

    valid = status == STATUS_VALID
    Av, Bv = A[valid], B[valid]
    Cv, Dv = n1 - Av, n0 - Bv
    or_qba[valid] = (Av * Dv) / (Bv * Cv)
    se_qba[valid] = np.sqrt(1.0 / Av + 1.0 / Bv + 1.0 / Cv + 1.0 / Dv)
    return status, or_qba, se_qba


def _grid_scalar(a, b, n1, n0, sens, spec):  # pragma: no cover - numba source
    ns, np_ = sens.size, spec.size
    status = np.zeros((ns, np_), dtype=np.int8)
    or_qba = np.full((ns, np_), np.nan)
    se_qba = np.full((ns, np_), np.nan)
    for i in range(ns):
        se = sens[i]
        for k in range(np_):
            sp = spec[k]
            den = se - (1.0 - sp)
            if den == 0.0:
                status[i, k] = STATUS_ZERO_DENOMINATOR
                continue
            A = (a - n1 * (1.0 - sp)) / den
            B = (b - n0 * (1.0 - sp)) / den
            if A < 0.0 or B < 0.0:
                status[i, k] = STATUS_NEGATIVE_CELL
            elif A > n1 or B > n0:
                status[i, k] = STATUS_CELL_EXCEEDS_TOTAL
            elif A == 0.0 or A == n1 or B == 0.0 or B == n0:
                status[i, k] = STATUS_ZERO_CELL
            else:
                C = n1 - A
                D = n0 - B
                or_qba[i, k] = (A * D) / (B * C)
                se_qba[i, k] = np.sqrt(1.0 / A + 1.0 / B + 1.0 / C + 1.0 / D)
    return status, or_qba, se_qba


_NUMBA_DISABLED = bool(os.environ.get("QBAKIT_DISABLE_NUMBA"))
_grid_numba = None

if not _NUMBA_DISABLED:
    try:
        from numba import njit

        _grid_numba = njit(cache=True)(_grid_scalar)
    except ImportError:  # pragma: no cover
        _grid_numba = None


def backend() -> str:
    """Name of the kernel implementation in use ("numba" or "numpy")."""
    return "numba" if _grid_numba is not None else "numpy"


def correct_grid(
    a: float,
    b: float,
    n1: float,
    n0: float,
    sens: np.ndarray,
    spec: np.ndarray,
    force: str | None = None,
):
    """Evaluate non-differential correction over the sens x spec lattice.

    Returns (status, or_qba, se_qba) arrays of shape (len(sens), len(spec)),
    row-major in sensitivity. `force` overrides backend selection ("numba"
    or "numpy"), used by tests and the benchmark.
    """
    sens = np.ascontiguousarray(sens, dtype=np.float64)
    spec = np.ascontiguousarray(spec, dtype=np.float64)
    use_numba = _grid_numba is not None if force is None else force == "numba"
    if use_numba:
        if _grid_numba is None:
            raise RuntimeError("numba backend requested but unavailable")
        return _grid_numba(float(a), float(b), float(n1), float(n0), sens, spec)
    return _grid_numpy(float(a), float(b), float(n1), float(n0), sens, spec)
