"""FastAPI application wiring the engine to HTTP routes under /api/v1."""

from __future__ import annotations

from pathlib import Path
from typing import List, Optional, Union

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import __version__
from ..datasets import load_dataset
from ..errors import MobishiftError, UnknownCaseError
from . import api
from .schemas import (
    ApiErrorModel,
    CalculationRequest,
    CalculationResponse,
    CaseListResponse,
    CaseReportModel,
    FactorsResponse,
    HealthResponse,
    SweepResponse,
)


def _error_response(status: int, code: str, message: str, field: Optional[str]) -> JSONResponse:
    body = ApiErrorModel(code=code, message=message, field=field)
    return JSONResponse(status_code=status, content=body.model_dump(mode="json"))


def create_app(
    data_dir: "str | Path | None" = None, ui_dir: "str | Path | None" = None
) -> FastAPI:
    """Build the service around one loaded dataset.

    The app is stateless beyond that dataset, so one process can serve any
    number of concurrent calculations. ui_dir, when given, is served as the
    site root so the calculator page and its API share an origin.
    """
    ds = load_dataset(data_dir)
    app = FastAPI(
        title="mobishift",
        version=__version__,
        docs_url="/api/docs",
        openapi_url="/api/openapi.json",
    )
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(MobishiftError)
    async def _domain_error(request: Request, exc: MobishiftError) -> JSONResponse:
        status = 404 if isinstance(exc, UnknownCaseError) else 400
        return _error_response(status, exc.code, str(exc), exc.field)

    @app.exception_handler(RequestValidationError)
    async def _validation_error(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(
            str(part)
            for part in first.get("loc", [])
            if isinstance(part, str) and part != "body"
        )
        message = first.get("msg", "invalid request")
        return _error_response(400, "bad_request", message, loc or None)

    @app.get("/api/v1/health", response_model=HealthResponse)
    def get_health() -> HealthResponse:
        return api.health()

    @app.get("/api/v1/factors", response_model=FactorsResponse)
    def get_factors(
        grid: Optional[str] = None, scenario: Optional[int] = None
    ) -> FactorsResponse:
        return api.factors_response(ds, grid=grid, scenario=scenario)

    @app.get("/api/v1/case-studies", response_model=CaseListResponse)
    def get_case_list() -> CaseListResponse:
        return api.case_list(ds)

    @app.get("/api/v1/case-studies/{case_id}", response_model=CaseReportModel)
    def get_case(
        case_id: str,
        scenario: Optional[int] = None,
        no_modal_shift: bool = False,
        factor_mode: str = "canonical",
    ) -> CaseReportModel:
        return api.case_report(
            ds,
            case_id,
            scenario=scenario,
            no_modal_shift=no_modal_shift,
            factor_mode=factor_mode,
        )

    @app.post("/api/v1/calculate", response_model=CalculationResponse)
    def post_calculate(request_body: CalculationRequest) -> CalculationResponse:
        return api.calculate(ds, request_body)

    @app.get("/api/v1/sweeps/{parameter}", response_model=SweepResponse)
    def get_sweep(
        parameter: str,
        case: Optional[str] = None,
        scenario: Optional[int] = None,
        factor_mode: str = "canonical",
        points: Optional[List[str]] = Query(None),
        minimum: Optional[float] = Query(None, alias="min"),
        maximum: Optional[float] = Query(None, alias="max"),
        steps: Optional[int] = None,
    ) -> SweepResponse:
        # accept both repeated params (?points=5&points=40) and one
        # comma-separated list (?points=5,40)
        parsed = None
        if points:
            parsed = [
                piece.strip()
                for item in points
                for piece in item.split(",")
                if piece.strip()
            ]
        return api.sweep(
            ds,
            parameter,
            case=case,
            scenario=scenario,
            factor_mode=factor_mode,
            points=parsed,
            minimum=minimum,
            maximum=maximum,
            steps=steps,
        )

    if ui_dir is not None:
        root = Path(ui_dir)
        if root.is_dir():
            app.mount("/", StaticFiles(directory=root, html=True), name="ui")

    return app
