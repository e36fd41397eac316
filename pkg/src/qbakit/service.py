"""Stateless HTTP JSON facade over correction, sweeps, and the synthetic space.

Every response body is an envelope {ok: bool, result | error: {code,
message, diagnostics}}. An invalid correction is ok:true with
result.correction.kind == "invalid": it is a domain answer, not a
transport failure. Responses are pure functions of the request; a strong
ETag is derived from the canonicalized request and results are memoized
in a small in-process LRU.

Status codes: 400 malformed JSON, 422 precondition violations (with
field-level messages), 413 sweep window too large.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from collections import OrderedDict
from typing import Any, Callable

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import reports
from .estimation import VarianceMethod
from .exceptions import GridTooLarge, QbaError
from .sweep import SweepSpec, ValidityFrontier, frontier, run_sweep
from .synthspace import (
    DEFAULT_N_PER_ARM,
    ScenarioSpec,
    estimable_curve,
    full_space,
    sweep_stratum,
)
from .tables import ArmErrors, ErrorModel, ObservedTable

SWEEP_CELL_CAP = 250_000
MEMO_SIZE = 128


class _Memo:
    """Bounded LRU memo; safe under concurrent access, last writer wins."""

    def __init__(self, size: int = MEMO_SIZE):
        self._size = size
        self._lock = threading.Lock()
        self._entries: OrderedDict[str, Any] = OrderedDict()

    def get_or_compute(self, key: str, compute: Callable[[], Any]) -> Any:
        with self._lock:
            if key in self._entries:
                self._entries.move_to_end(key)
                return self._entries[key]
        value = compute()
        with self._lock:
            self._entries[key] = value
            self._entries.move_to_end(key)
            while len(self._entries) > self._size:
                self._entries.popitem(last=False)
        return value


class _FieldError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


def _canonical(document: Any) -> str:
    return json.dumps(document, sort_keys=True, separators=(",", ":"))


def _etag(canonical_request: str) -> str:
    return '"' + hashlib.sha256(canonical_request.encode()).hexdigest() + '"'


def _ok(result: Any, canonical_request: str) -> JSONResponse:
    return JSONResponse(
        {"ok": True, "result": result},
        headers={"ETag": _etag(canonical_request)},
    )


def _error(status: int, code: str, message: str, diagnostics: Any = None) -> JSONResponse:
    return JSONResponse(
        {"ok": False, "error": {"code": code, "message": message,
                                "diagnostics": diagnostics}},
        status_code=status,
    )


def _field(payload: dict, field: str, kind=float, required=True, default=None):
    if field not in payload:
        if required:
            raise _FieldError(field, "required")
        return default
    value = payload[field]
    try:
        return kind(value)
    except (TypeError, ValueError) as exc:
        raise _FieldError(field, str(exc)) from exc


def _parse_table(payload: dict) -> ObservedTable:
    table = payload.get("table")
    if not isinstance(table, dict):
        raise _FieldError("table", "required object")
    try:
        return ObservedTable(
            a=_field(table, "a"),
            b=_field(table, "b"),
            n_target=_field(table, "n_target"),
            n_comparator=_field(table, "n_comparator"),
        )
    except ValueError as exc:
        raise _FieldError("table", str(exc)) from exc


def _parse_errors(payload: dict) -> ErrorModel:
    errors = payload.get("errors")
    if not isinstance(errors, dict):
        raise _FieldError("errors", "required object")
    mode = errors.get("mode", "non_differential")
    try:
        target = errors.get("target")
        if not isinstance(target, dict):
            raise _FieldError("errors.target", "required object")
        target_arm = ArmErrors(
            _field(target, "sensitivity"), _field(target, "specificity")
        )
        if mode == "non_differential":
            return ErrorModel.non_differential(
                target_arm.sensitivity, target_arm.specificity
            )
        if mode == "differential":
            comparator = errors.get("comparator")
            if not isinstance(comparator, dict):
                raise _FieldError("errors.comparator", "required object")
            return ErrorModel.differential(
                target_arm,
                ArmErrors(
                    _field(comparator, "sensitivity"),
                    _field(comparator, "specificity"),
                ),
            )
        raise _FieldError("errors.mode", f"unknown mode {mode!r}")
    except ValueError as exc:
        raise _FieldError("errors", str(exc)) from exc


async def _read_json(request: Request) -> dict | JSONResponse:
    try:
        payload = await request.json()
    except Exception:
        return _error(400, "malformed_json", "request body is not valid JSON")
    if not isinstance(payload, dict):
        return _error(400, "malformed_json", "request body must be a JSON object")
    return payload


def create_app() -> FastAPI:
    app = FastAPI(title="qbakit", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[os.environ.get("QBAKIT_CORS_ORIGIN", "*")],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )
    memo = _Memo()

    @app.get("/healthz")
    def healthz():
        return {"ok": True}

    @app.post("/api/v1/correct")
    async def correct(request: Request):
        payload = await _read_json(request)
        if isinstance(payload, JSONResponse):
            return payload
        try:
            table = _parse_table(payload)
            errors = _parse_errors(payload)
            method_name = payload.get("variance_method", "woolf_corrected")
            try:
                method = VarianceMethod(method_name)
            except ValueError as exc:
                raise _FieldError("variance_method", str(exc)) from exc
        except _FieldError as exc:
            return _error(422, "precondition", exc.message,
                          diagnostics={"field": exc.field})
        canonical = _canonical({"op": "correct", "body": payload})
        result = memo.get_or_compute(
            canonical, lambda: reports.correction_report(table, errors, method)
        )
        return _ok(result, canonical)

    @app.post("/api/v1/sweep")
    async def sweep(request: Request):
        payload = await _read_json(request)
        if isinstance(payload, JSONResponse):
            return payload
        try:
            table = _parse_table(payload)
            spec = SweepSpec(
                table,
                sens_min=_field(payload, "sens_min", required=False, default=0.0),
                sens_max=_field(payload, "sens_max", required=False, default=1.0),
                spec_min=_field(payload, "spec_min", required=False, default=0.0),
                spec_max=_field(payload, "spec_max", required=False, default=1.0),
                step=_field(payload, "step", required=False, default=1e-4),
            )
        except _FieldError as exc:
            return _error(422, "precondition", exc.message,
                          diagnostics={"field": exc.field})
        except ValueError as exc:
            return _error(422, "precondition", str(exc))
        emit = payload.get("emit", "frontier_only")
        canonical = _canonical({"op": "sweep", "body": payload})

        if emit == "frontier_only":
            result = memo.get_or_compute(
                canonical, lambda: _frontier_doc(frontier(spec))
            )
            return _ok(result, canonical)
        if emit != "full_grid":
            return _error(422, "precondition", f"unknown emit mode {emit!r}",
                          diagnostics={"field": "emit"})
        try:
            result = memo.get_or_compute(
                canonical, lambda: _grid_doc(spec)
            )
        except GridTooLarge as exc:
            return _error(413, "window_too_large", str(exc))
        return _ok(result, canonical)

    # query params are read by hand: `or` is a Python keyword so it cannot
    # be a handler argument name
    @app.get("/api/v1/synth/stratum")
    def synth_stratum(request: Request):
        params = dict(request.query_params)
        try:
            if "ip" not in params:
                raise _FieldError("ip", "required")
            if "or" not in params:
                raise _FieldError("or", "required")
            try:
                ip = float(params["ip"])
                uncorrected_or = float(params["or"])
                n = float(params.get("n", DEFAULT_N_PER_ARM))
            except ValueError as exc:
                raise _FieldError("ip/or/n", str(exc)) from exc
            try:
                spec = ScenarioSpec(ip, uncorrected_or, n)
            except ValueError as exc:
                raise _FieldError("ip/or/n", str(exc)) from exc
        except _FieldError as exc:
            return _error(422, "precondition", exc.message,
                          diagnostics={"field": exc.field})
        canonical = _canonical(
            {"op": "stratum", "ip": ip, "or": uncorrected_or, "n": n}
        )
        try:
            result = memo.get_or_compute(
                canonical,
                lambda: reports.stratum_to_dict(sweep_stratum(spec)),
            )
        except QbaError as exc:
            return _error(422, "precondition", str(exc),
                          diagnostics={"field": "ip/or/n"})
        return _ok(result, canonical)

    @app.get("/api/v1/synth/estimable")
    def synth_estimable(request: Request):
        params = dict(request.query_params)
        try:
            n = float(params.get("n", DEFAULT_N_PER_ARM))
            if n <= 0:
                raise ValueError("n must be positive")
        except ValueError as exc:
            return _error(422, "precondition", str(exc),
                          diagnostics={"field": "n"})
        canonical = _canonical({"op": "estimable", "n": n})
        result = memo.get_or_compute(
            canonical,
            lambda: [
                {"incidence": ip, "or": r, "estimable": proportion}
                for ip, r, proportion in estimable_curve(full_space(n_per_arm=n))
            ],
        )
        return _ok(result, canonical)

    return app


def _frontier_doc(result: ValidityFrontier) -> dict:
    return {
        "kind": "frontier",
        "strategy": result.strategy,
        "rows": [
            {
                "sensitivity": row.sensitivity,
                "min_valid_specificity": row.min_valid_specificity,
            }
            for row in result.rows
        ],
    }


def _grid_doc(spec: SweepSpec) -> dict:
    grid = run_sweep(spec, emit="full_grid", cell_cap=SWEEP_CELL_CAP)
    return {
        "kind": "full_grid",
        "cells": [
            {
                "sensitivity": cell.sensitivity,
                "specificity": cell.specificity,
                "valid": cell.valid,
                "or_qba": cell.or_qba,
                "se_qba": cell.se_qba,
                "reason": cell.reason,
            }
            for cell in grid.cells()
        ],
    }
