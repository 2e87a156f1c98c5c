"""Request and response bodies of the JSON API.

The CLI renders the same models, so command output and HTTP bodies stay
byte-identical.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator

from ..modes import TransportMode


class ProfileModel(BaseModel):
    """A mobility profile on the wire: annual km per mode."""

    label: str = ""
    distances: dict[TransportMode, float] = Field(default_factory=dict)

    @field_validator("distances")
    @classmethod
    def _distances_non_negative(cls, v: dict[TransportMode, float]):
        for mode, km in v.items():
            if km < 0:
                raise ValueError(f"distance for {mode.value} must be >= 0")
        return v


class GridModel(BaseModel):
    label: str
    g_per_kwh: float


class FactorModel(BaseModel):
    mode: TransportMode
    g_per_pkt: float
    provenance: str


class FactorsResponse(BaseModel):
    grid: GridModel
    scenario: int
    factors: list[FactorModel]


class BreakdownModel(BaseModel):
    """Per-mode emissions or emission changes, kg CO2-eq per year."""

    per_mode: dict[TransportMode, float]
    total: float


class CalculationRequest(BaseModel):
    """A custom before/during comparison.

    grid takes a known label or a bare intensity in g/kWh; occupancy
    entries override the bundled averages (computed factors only). Naming a
    case applies its grid and, under canonical factors, its published
    factor table.
    """

    before: ProfileModel
    during: ProfileModel
    scenario: int = 1
    grid: Optional[Union[float, str]] = None
    occupancy: dict[TransportMode, float] = Field(default_factory=dict)
    factor_mode: Literal["computed", "canonical"] = "computed"
    case: Optional[str] = None


class CalculationResponse(BaseModel):
    before: BreakdownModel
    during: BreakdownModel
    delta: BreakdownModel
    factors: dict[TransportMode, float]
    reduction_rate: Optional[float]


class CaseSummaryModel(BaseModel):
    id: str
    label: str
    scenarios: list[int]
    default_scenario: int
    grid: GridModel


class CaseListResponse(BaseModel):
    cases: list[CaseSummaryModel]


class CaseReportModel(BaseModel):
    case: str
    label: str
    scenario: int
    factor_mode: str
    no_modal_shift: bool
    grid: GridModel
    before: ProfileModel
    during: ProfileModel
    before_total_km: float
    during_total_km: float
    factors: dict[TransportMode, float]
    per_mode_delta: dict[TransportMode, float]
    total_delta_kg: float
    before_emissions_kg: float
    reduction_rate: Optional[float]


class SweepPointModel(BaseModel):
    value: float
    total_delta_kg: float
    label: Optional[str] = None


class SweepResponse(BaseModel):
    parameter: str
    unit: str
    case: str
    scenario: int
    factor_mode: str
    baseline: SweepPointModel
    points: list[SweepPointModel]


class HealthResponse(BaseModel):
    status: str
    version: str


class ApiErrorModel(BaseModel):
    """Uniform error body: a stable code, a message, the offending field."""

    code: str
    message: str
    field: Optional[str] = None
