"""Per-passenger-kilometre emission factors derived from life-cycle inventories.

A vehicle inventory splits its greenhouse-gas burden into stage entries that
either accrue once over the vehicle's total lifetime travel, accrue per
vehicle-km, or accrue as electricity drawn per vehicle-km. The factor for a
mode divides the per-vehicle-km total by occupancy:

    g/PKT = (fixed_kg / lifetime_km + per_km_kg + kWh_per_km * grid_g_per_kwh / 1000)
            / occupancy * 1000

End-of-life treatment is excluded from the inventories on purpose; it is a
small, highly uncertain share of the total.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import ConfigurationError, DomainError, MissingGridError
from .modes import LifeCycleStage, TransportMode

# Exact unit conversion, not an empirical constant.
MJ_PER_KWH = 3.6

COMPUTED = "computed"
CANONICAL = "canonical"

PLAIN_MEAN = "plain_mean"
NL_HALVED_MEAN = "nl_halved_mean"


@dataclass(frozen=True)
class VehicleLci:
    """Life-cycle inventory for one vehicle type.

    fixed_lifetime_kg spreads over the vehicle's lifetime mileage,
    per_vkt_kg accrues directly per vehicle-km, and per_vkt_mj is
    electricity per vehicle-km whose carbon content depends on the grid.
    A stage may appear in at most one of the three maps.
    """

    mode: TransportMode
    fixed_lifetime_kg: Mapping[LifeCycleStage, float] = field(default_factory=dict)
    per_vkt_kg: Mapping[LifeCycleStage, float] = field(default_factory=dict)
    per_vkt_mj: Mapping[LifeCycleStage, float] = field(default_factory=dict)

    def __post_init__(self):
        seen: dict[LifeCycleStage, str] = {}
        for name, entries in (
            ("fixed_lifetime_kg", self.fixed_lifetime_kg),
            ("per_vkt_kg", self.per_vkt_kg),
            ("per_vkt_mj", self.per_vkt_mj),
        ):
            for stage, value in entries.items():
                if value < 0:
                    raise ConfigurationError(
                        f"{self.mode.value}: {name}[{stage.value}] must be >= 0",
                        field=name,
                    )
                if stage in seen:
                    raise ConfigurationError(
                        f"{self.mode.value}: stage {stage.value!r} appears in both "
                        f"{seen[stage]} and {name}",
                        field=name,
                    )
                seen[stage] = name

    @property
    def needs_grid(self) -> bool:
        return bool(self.per_vkt_mj)


@dataclass(frozen=True)
class LtmScenario:
    """A lifetime-mileage assumption for shared cars.

    The total lifetime mileage is the product of service life and annual
    driving distance. Three scenarios are bundled: driven like a private
    car, retired earlier under heavier use, and kept as long under
    lighter use.
    """

    id: int
    label: str
    age_years: float
    annual_km: float

    def __post_init__(self):
        if self.age_years <= 0 or self.annual_km <= 0:
            raise DomainError(
                f"scenario {self.id}: age_years and annual_km must be positive",
                field="scenario",
            )

    @property
    def ltm_km(self) -> float:
        return self.age_years * self.annual_km


@dataclass(frozen=True)
class EnergyProfile:
    """Generation mix of an electricity grid, as shares per source."""

    label: str
    shares: Mapping[str, float]

    def __post_init__(self):
        for source, share in self.shares.items():
            if not 0.0 <= share <= 1.0:
                raise ConfigurationError(
                    f"{self.label}: share for {source!r} outside [0, 1]",
                    field="shares",
                )
        total = sum(self.shares.values())
        if abs(total - 1.0) > 0.01:
            raise ConfigurationError(
                f"{self.label}: generation shares sum to {total:.4f}, expected 1.0",
                field="shares",
            )


@dataclass(frozen=True)
class TechEmissionFactors:
    """Median life-cycle emission intensity per generation technology, g/kWh.

    No intensity is published for petroleum generation in the source data
    set; the biomass value stands in for it, so the two entries must match.
    """

    g_per_kwh: Mapping[str, float]

    def __post_init__(self):
        for source, value in self.g_per_kwh.items():
            if value < 0:
                raise ConfigurationError(
                    f"technology factor for {source!r} must be >= 0",
                    field="g_per_kwh",
                )
        petroleum = self.g_per_kwh.get("petroleum")
        biomass = self.g_per_kwh.get("biomass")
        if petroleum is not None and biomass is not None and petroleum != biomass:
            raise ConfigurationError(
                "petroleum intensity must equal the biomass stand-in value",
                field="g_per_kwh",
            )


@dataclass(frozen=True)
class OccupancySpec:
    """Average persons per vehicle for each mode."""

    per_mode: Mapping[TransportMode, float]

    def __post_init__(self):
        for mode, occ in self.per_mode.items():
            if occ < 1.0:
                raise DomainError(
                    f"occupancy for {mode.value} must be >= 1",
                    field="occupancy",
                )

    def get(self, mode: TransportMode) -> float:
        try:
            return self.per_mode[mode]
        except KeyError:
            raise DomainError(
                f"no occupancy configured for mode {mode.value!r}",
                field="occupancy",
            ) from None

    def merged(self, overrides: Mapping[TransportMode, float]) -> "OccupancySpec":
        if not overrides:
            return self
        merged = dict(self.per_mode)
        merged.update(overrides)
        return OccupancySpec(per_mode=merged)


@dataclass(frozen=True)
class EmissionFactor:
    """A per-passenger-km emission intensity, g CO2-eq/PKT."""

    mode: TransportMode
    g_per_pkt: float
    provenance: str = COMPUTED

    def __post_init__(self):
        if self.g_per_pkt < 0:
            raise DomainError(
                f"factor for {self.mode.value} must be >= 0", field="g_per_pkt"
            )


def grid_electricity_factor(
    profile: EnergyProfile, tech: TechEmissionFactors
) -> float:
    """Carbon intensity of a grid, g CO2-eq/kWh, as the share-weighted mean
    of its generation technologies."""
    total = 0.0
    for source, share in profile.shares.items():
        if share == 0.0:
            continue
        if source not in tech.g_per_kwh:
            raise ConfigurationError(
                f"{profile.label}: no emission intensity for source {source!r}",
                field="shares",
            )
        total += share * tech.g_per_kwh[source]
    return total


def per_pkt_factor(
    lci: VehicleLci,
    ltm_km: float,
    occupancy: float,
    grid_g_per_kwh: float | None = None,
    provenance: str = COMPUTED,
) -> EmissionFactor:
    """Emission factor for one mode from its inventory.

    ltm_km is the vehicle's lifetime mileage, over which the fixed stage
    entries are spread. Inventories with electricity entries require a grid
    intensity.
    """
    if ltm_km <= 0:
        raise DomainError("lifetime mileage must be positive", field="ltm_km")
    if occupancy < 1.0:
        raise DomainError("occupancy must be >= 1", field="occupancy")

    kg_per_vkt = sum(lci.fixed_lifetime_kg.values()) / ltm_km
    kg_per_vkt += sum(lci.per_vkt_kg.values())
    mj = sum(lci.per_vkt_mj.values())
    if mj > 0.0:
        if grid_g_per_kwh is None:
            raise MissingGridError(
                f"{lci.mode.value}: inventory draws electricity but no grid "
                "intensity was given",
                field="grid",
            )
        if grid_g_per_kwh < 0:
            raise DomainError("grid intensity must be >= 0", field="grid")
        kg_per_vkt += mj / MJ_PER_KWH * grid_g_per_kwh / 1000.0

    return EmissionFactor(
        mode=lci.mode,
        g_per_pkt=kg_per_vkt / occupancy * 1000.0,
        provenance=provenance,
    )


def cs_factor(
    car_lci: VehicleLci, scenario: LtmScenario, occupancy: float
) -> EmissionFactor:
    """Shared-car factor: the car inventory spread over the scenario's
    lifetime mileage."""
    base = per_pkt_factor(car_lci, scenario.ltm_km, occupancy)
    return EmissionFactor(
        mode=TransportMode.CS, g_per_pkt=base.g_per_pkt, provenance=base.provenance
    )


def carpool_factor(
    car_lci: VehicleLci, ltm_km: float, occupancy: float = 2.5
) -> EmissionFactor:
    """Carpool factor: the car inventory at shared-ride occupancy."""
    base = per_pkt_factor(car_lci, ltm_km, occupancy)
    return EmissionFactor(
        mode=TransportMode.CARPOOL,
        g_per_pkt=base.g_per_pkt,
        provenance=base.provenance,
    )


def constant_factor(
    mode: TransportMode, g_per_pkt: float, provenance: str = COMPUTED
) -> EmissionFactor:
    """Factor for modes carried as flat literature values (cycling, walking)."""
    return EmissionFactor(mode=mode, g_per_pkt=g_per_pkt, provenance=provenance)


def other_mode_factor(
    factors: Sequence[EmissionFactor], rule: str = PLAIN_MEAN
) -> EmissionFactor:
    """Aggregate factor for residual 'other' travel.

    plain_mean averages the given factors. nl_halved_mean additionally
    halves the mean, the convention used in the Dutch survey's published
    factor table.
    """
    if not factors:
        raise DomainError("cannot average an empty factor list", field="factors")
    mean = sum(f.g_per_pkt for f in factors) / len(factors)
    if rule == PLAIN_MEAN:
        value = mean
    elif rule == NL_HALVED_MEAN:
        value = mean / 2.0
    else:
        raise DomainError(f"unknown aggregation rule {rule!r}", field="rule")
    return EmissionFactor(mode=TransportMode.OTHER, g_per_pkt=value)
