"""HTTP JSON API over the solver, evaluator, and preview renderer.

Request bodies are parsed by hand from the raw bytes so the error contract
stays ours: 400 for anything wrong with the input, 422 only for a solve
that ran and proved infeasible (the response still carries the
least-violating candidate), 500 for genuine bugs.  The solve endpoint and
the CLI serialize solutions through one function, so their outputs are
byte-identical for identical problems and seeds.
"""

from __future__ import annotations

import json
from types import SimpleNamespace

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from starlette.concurrency import run_in_threadpool

from . import __version__
from .errors import (
    DegenerateColor,
    DegenerateProblem,
    GridError,
    GridMismatch,
    Infeasible,
    LengthMismatch,
    ParseError,
    RangeError,
    SchemaError,
    SpecledError,
    TooLarge,
    WeightOutOfBounds,
)
from .fixtures import fixture_index, fixtures_dir
from .io import (
    load_problem,
    solution_from_payload,
    solution_json_str,
)
from .optimize import solve
from .report import evaluate, report_json_str, swatch_rows

DEFAULT_TIMEOUT_MS = 30_000

_ERROR_CODES = {
    ParseError: "parse_error",
    SchemaError: "schema_error",
    GridError: "grid_error",
    GridMismatch: "grid_mismatch",
    RangeError: "range_error",
    LengthMismatch: "length_mismatch",
    WeightOutOfBounds: "weight_out_of_bounds",
    DegenerateProblem: "degenerate_problem",
    DegenerateColor: "degenerate_color",
    TooLarge: "too_large",
}


class _BadRequest(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _error_body(code, message, **extra):
    body = {"error": {"code": code, "message": message}}
    body.update(extra)
    return body


def _error_response(status, code, message, **extra):
    return JSONResponse(status_code=status, content=_error_body(code, message, **extra))


async def _read_json(request):
    raw = await request.body()
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise _BadRequest("parse_error", f"request body is not valid JSON: {exc}")
    if not isinstance(payload, dict):
        raise _BadRequest("parse_error", "request body must be a JSON object")
    return payload


def _problem_from_payload(payload):
    """ProblemFile payload -> SolveProblem; paths resolve in the fixture dir."""
    return load_problem(payload, base_dir=fixtures_dir())


def _alphas_from_payload(payload):
    if "solution" in payload:
        sol = solution_from_payload(payload["solution"], where="solution")
        return sol.alpha1, sol.alpha2
    if "alpha1" in payload and "alpha2" in payload:
        for key in ("alpha1", "alpha2"):
            value = payload[key]
            if not isinstance(value, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool)
                for v in value
            ):
                raise SchemaError(f"{key} must be a list of numbers")
        return payload["alpha1"], payload["alpha2"]
    raise SchemaError(
        "body must contain either 'solution' or both 'alpha1' and 'alpha2'"
    )


def create_app(ui_dir=None):
    app = FastAPI(title="specled", version=__version__, openapi_url=None)

    @app.exception_handler(_BadRequest)
    async def _bad_request(request, exc):
        return _error_response(400, exc.code, str(exc))

    @app.exception_handler(SpecledError)
    async def _domain_error(request, exc):
        code = _ERROR_CODES.get(type(exc), "invalid_input")
        return _error_response(400, code, str(exc))

    @app.exception_handler(Exception)
    async def _internal(request, exc):
        return _error_response(500, "internal", f"{type(exc).__name__}: {exc}")

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.get("/api/fixtures")
    async def fixtures():
        return await run_in_threadpool(fixture_index)

    @app.post("/api/solve")
    async def api_solve(request: Request):
        payload = await _read_json(request)
        timeout_ms = payload.pop("timeout_ms", DEFAULT_TIMEOUT_MS)
        if not isinstance(timeout_ms, int) or isinstance(timeout_ms, bool) or timeout_ms <= 0:
            raise _BadRequest("schema_error", "timeout_ms must be a positive integer")
        problem = _problem_from_payload(payload)
        try:
            sol = await run_in_threadpool(
                solve, problem, deadline_s=timeout_ms / 1000.0
            )
        except Infeasible as exc:
            if exc.solution is None:
                raise
            body = _error_body("infeasible", str(exc))
            body["solution"] = json.loads(solution_json_str(exc.solution))
            return JSONResponse(status_code=422, content=body)
        return Response(
            content=solution_json_str(sol), media_type="application/json"
        )

    @app.post("/api/evaluate")
    async def api_evaluate(request: Request):
        payload = await _read_json(request)
        if "problem" not in payload:
            raise _BadRequest("schema_error", "body must contain 'problem'")
        problem = _problem_from_payload(payload["problem"])
        a1, a2 = _alphas_from_payload(payload)
        report = await run_in_threadpool(
            evaluate, problem, SimpleNamespace(alpha1=a1, alpha2=a2)
        )
        return Response(
            content=report_json_str(report), media_type="application/json"
        )

    @app.post("/api/preview")
    async def api_preview(request: Request):
        payload = await _read_json(request)
        if "problem" not in payload:
            raise _BadRequest("schema_error", "body must contain 'problem'")
        problem = _problem_from_payload(payload["problem"])
        a1, a2 = _alphas_from_payload(payload)
        rows = await run_in_threadpool(swatch_rows, problem, a1, a2)
        return {"rows": rows}

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app
