"""Shared response builders behind both the HTTP routes and the CLI.

Keeping this layer free of FastAPI lets the CLI produce byte-identical
JSON without a running server.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence, Union

from pydantic import BaseModel

from .. import __version__
from ..cases import (
    BUS_OCCUPANCY_SWEEP,
    GRID_SWEEP,
    CaseStudyReport,
    SweepResult,
    canonical_factor_set,
    computed_factor_set,
    run_case_study,
    sweep_bus_occupancy,
    sweep_electricity_grid,
)
from ..datasets import Dataset
from ..errors import DomainError
from ..factors import CANONICAL
from ..mobility import MobilityProfile, annual_emissions, emissions_delta
from ..modes import TransportMode
from .schemas import (
    BreakdownModel,
    CalculationRequest,
    CalculationResponse,
    CaseListResponse,
    CaseReportModel,
    CaseSummaryModel,
    FactorModel,
    FactorsResponse,
    GridModel,
    HealthResponse,
    ProfileModel,
    SweepPointModel,
    SweepResponse,
)


def render_json(model: BaseModel) -> str:
    """Serialize a response model exactly as the HTTP layer does."""
    return json.dumps(
        model.model_dump(mode="json"),
        ensure_ascii=False,
        allow_nan=False,
        indent=None,
        separators=(",", ":"),
    )


def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


def factors_response(
    ds: Dataset,
    grid: Optional[Union[str, float]] = None,
    scenario: Optional[int] = None,
) -> FactorsResponse:
    """All per-mode factors for one grid and one lifetime scenario."""
    label, value = ds.grids.resolve(grid)
    scenario_id = ds.default_scenario if scenario is None else int(scenario)
    factors = computed_factor_set(ds, value, ds.scenario(scenario_id))
    return FactorsResponse(
        grid=GridModel(label=label, g_per_kwh=value),
        scenario=scenario_id,
        factors=[
            FactorModel(mode=m, g_per_pkt=f.g_per_pkt, provenance=f.provenance)
            for m, f in factors.items()
        ],
    )


def case_list(ds: Dataset) -> CaseListResponse:
    summaries = []
    for case in sorted(ds.cases.values(), key=lambda c: c.id):
        label, value = ds.grids.resolve(case.grid_label)
        summaries.append(
            CaseSummaryModel(
                id=case.id,
                label=case.label,
                scenarios=list(case.scenario_ids),
                default_scenario=case.default_scenario,
                grid=GridModel(label=label, g_per_kwh=value),
            )
        )
    return CaseListResponse(cases=summaries)


def _profile_model(profile: MobilityProfile) -> ProfileModel:
    return ProfileModel(
        label=profile.label,
        distances={m: profile.distances[m] for m in profile.modes()},
    )


def case_report_model(report: CaseStudyReport) -> CaseReportModel:
    return CaseReportModel(
        case=report.case,
        label=report.label,
        scenario=report.scenario,
        factor_mode=report.factor_mode,
        no_modal_shift=report.no_modal_shift,
        grid=GridModel(label=report.grid_label, g_per_kwh=report.grid_g_per_kwh),
        before=_profile_model(report.before),
        during=_profile_model(report.during),
        before_total_km=report.before.total_km,
        during_total_km=report.during.total_km,
        factors={m: f.g_per_pkt for m, f in report.factors.items()},
        per_mode_delta=dict(report.delta.per_mode),
        total_delta_kg=report.delta.total,
        before_emissions_kg=report.before_emissions.total,
        reduction_rate=report.reduction_rate,
    )


def case_report(
    ds: Dataset,
    region: str,
    scenario: Optional[int] = None,
    no_modal_shift: bool = False,
    factor_mode: str = CANONICAL,
) -> CaseReportModel:
    report = run_case_study(
        ds,
        region,
        scenario=scenario,
        factor_mode=factor_mode,
        no_modal_shift=no_modal_shift,
    )
    return case_report_model(report)


def calculate(ds: Dataset, request: CalculationRequest) -> CalculationResponse:
    """Emissions for a custom before/during pair."""
    scenario = ds.scenario(request.scenario)
    case = ds.case(request.case) if request.case else None
    grid_ref = request.grid
    if grid_ref is None and case is not None:
        grid_ref = case.grid_label
    _, grid_value = ds.grids.resolve(grid_ref)

    if request.factor_mode == CANONICAL:
        if case is None:
            raise DomainError(
                "canonical factors need a case to take them from", field="case"
            )
        factors = canonical_factor_set(case, request.scenario)
    else:
        factors = computed_factor_set(
            ds,
            grid_value,
            scenario,
            occupancy_overrides=request.occupancy,
            other_rule_modes=case.other_rule_modes if case else None,
        )

    before = MobilityProfile(
        label=request.before.label or "before", distances=request.before.distances
    )
    during = MobilityProfile(
        label=request.during.label or "during", distances=request.during.distances
    )
    before_em = annual_emissions(before, factors)
    during_em = annual_emissions(during, factors)
    delta = emissions_delta(before, during, factors)
    rate = -delta.total / before_em.total if before_em.total > 0 else None
    return CalculationResponse(
        before=BreakdownModel(per_mode=dict(before_em.per_mode), total=before_em.total),
        during=BreakdownModel(per_mode=dict(during_em.per_mode), total=during_em.total),
        delta=BreakdownModel(per_mode=dict(delta.per_mode), total=delta.total),
        factors={m: f.g_per_pkt for m, f in factors.items()},
        reduction_rate=rate,
    )


def _sweep_model(result: SweepResult) -> SweepResponse:
    return SweepResponse(
        parameter=result.parameter,
        unit=result.unit,
        case=result.case,
        scenario=result.scenario,
        factor_mode=result.factor_mode,
        baseline=SweepPointModel(
            value=result.baseline.value,
            total_delta_kg=result.baseline.total_delta_kg,
            label=result.baseline.label,
        ),
        points=[
            SweepPointModel(
                value=p.value, total_delta_kg=p.total_delta_kg, label=p.label
            )
            for p in result.points
        ],
    )


def linspace(minimum: float, maximum: float, steps: int) -> list[float]:
    """Evenly spaced sweep values including both endpoints."""
    if steps < 2:
        raise DomainError("steps must be at least 2", field="steps")
    if not minimum < maximum:
        raise DomainError("min must be below max", field="min")
    width = (maximum - minimum) / (steps - 1)
    values = [minimum + i * width for i in range(steps - 1)]
    values.append(maximum)
    return values


def sweep(
    ds: Dataset,
    parameter: str,
    case: Optional[str] = None,
    scenario: Optional[int] = None,
    factor_mode: str = CANONICAL,
    points: Optional[Sequence[Union[str, float]]] = None,
    minimum: Optional[float] = None,
    maximum: Optional[float] = None,
    steps: Optional[int] = None,
) -> SweepResponse:
    """Run one of the two sensitivity sweeps.

    Points win over min/max/steps; with neither, a sensible default range
    is used. Grid sweep points may be grid labels as well as intensities.
    """
    if points is None and (minimum is not None or maximum is not None or steps is not None):
        if minimum is None or maximum is None or steps is None:
            raise DomainError(
                "min, max and steps must be given together", field="steps"
            )
        points = linspace(minimum, maximum, steps)
    if parameter == BUS_OCCUPANCY_SWEEP:
        numeric = [float(p) for p in points] if points is not None else None
        result = sweep_bus_occupancy(
            ds,
            region=case or "calgary",
            values=numeric,
            scenario=scenario,
            factor_mode=factor_mode,
        )
    elif parameter == GRID_SWEEP:
        result = sweep_electricity_grid(
            ds,
            region=case or "san_francisco",
            grids=list(points) if points is not None else None,
            scenario=scenario,
            factor_mode=factor_mode,
        )
    else:
        raise DomainError(
            f"unknown sweep parameter {parameter!r}; "
            f"expected {BUS_OCCUPANCY_SWEEP!r} or {GRID_SWEEP!r}",
            field="parameter",
        )
    return _sweep_model(result)
