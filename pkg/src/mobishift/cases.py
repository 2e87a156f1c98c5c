"""Case-study runs: factor sets, emission deltas and sensitivity sweeps.

A case study couples a reconstructed before/during mobility pair with a
factor set and reports the per-mode and total emission change plus the
relative reduction against the before profile. Factor sets come in two
modes: ``canonical`` uses the rounded per-mode factors published with each
survey (reproducing the published tables digit for digit), ``computed``
derives everything from the bundled inventories, occupancies and grids.

The two sweeps vary one upstream parameter while holding everything else
fixed: bus occupancy (two-way fleets displace bus trips, and bus intensity
is dominated by occupancy) and grid carbon intensity (rail electrification
makes the rail factor grid-bound).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .datasets import CaseDefinition, Dataset
from .errors import DomainError, ScenarioNotApplicableError
from .factors import (
    CANONICAL,
    COMPUTED,
    EmissionFactor,
    LtmScenario,
    carpool_factor,
    constant_factor,
    cs_factor,
    other_mode_factor,
    per_pkt_factor,
)
from .mobility import (
    EmissionsBreakdown,
    MobilityProfile,
    annual_emissions,
    delta_without_modal_shift,
    emissions_delta,
)
from .modes import TransportMode, mode_sort_key
from .redistribution import (
    calgary_profiles,
    netherlands_profiles,
    san_francisco_profiles,
)

FACTOR_MODES = (CANONICAL, COMPUTED)

BUS_OCCUPANCY_SWEEP = "bus-occupancy"
GRID_SWEEP = "grid"


@dataclass(frozen=True)
class CaseStudyReport:
    """Everything a case-study run produces."""

    case: str
    label: str
    scenario: int
    factor_mode: str
    no_modal_shift: bool
    grid_label: str
    grid_g_per_kwh: float
    before: MobilityProfile
    during: MobilityProfile
    factors: Mapping[TransportMode, EmissionFactor]
    delta: EmissionsBreakdown
    before_emissions: EmissionsBreakdown
    reduction_rate: "float | None"


@dataclass(frozen=True)
class SweepPoint:
    value: float
    total_delta_kg: float
    label: "str | None" = None


@dataclass(frozen=True)
class SweepResult:
    parameter: str
    unit: str
    case: str
    scenario: int
    factor_mode: str
    points: tuple[SweepPoint, ...]
    baseline: SweepPoint

    def __post_init__(self):
        values = [p.value for p in self.points]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise DomainError(
                "sweep values must be strictly increasing", field="points"
            )


def reconstruct_case(case: CaseDefinition) -> tuple[MobilityProfile, MobilityProfile]:
    """Build the before/during profiles for a bundled case."""
    builders = {
        "netherlands": netherlands_profiles,
        "san_francisco": san_francisco_profiles,
        "calgary": calgary_profiles,
    }
    try:
        builder = builders[case.reconstruction]
    except KeyError:
        raise DomainError(
            f"unknown reconstruction {case.reconstruction!r}",
            field="reconstruction",
        ) from None
    return builder(case.inputs)


def computed_factor_set(
    ds: Dataset,
    grid_g_per_kwh: float,
    scenario: LtmScenario,
    occupancy_overrides: "Mapping[TransportMode, float] | None" = None,
    other_rule_modes: "Sequence[TransportMode] | None" = None,
) -> dict[TransportMode, EmissionFactor]:
    """Factor set derived from the bundled inventories.

    The shared-car factor uses the scenario's lifetime mileage; the private
    car keeps the private lifetime mileage throughout. The residual 'other'
    factor is the mean over the given modes (a default mix otherwise), with
    the shared car pinned to the baseline scenario so that varying the
    scenario does not leak into the residual aggregate.
    """
    occ = ds.occupancy.merged(occupancy_overrides or {})
    car_lci = ds.lci[TransportMode.CAR]
    factors: dict[TransportMode, EmissionFactor] = {
        TransportMode.CAR: per_pkt_factor(
            car_lci, ds.private_car_ltm_km, occ.get(TransportMode.CAR)
        ),
        TransportMode.CS: cs_factor(car_lci, scenario, occ.get(TransportMode.CS)),
        TransportMode.RAIL: per_pkt_factor(
            ds.lci[TransportMode.RAIL],
            ds.private_car_ltm_km,
            occ.get(TransportMode.RAIL),
            grid_g_per_kwh,
        ),
        TransportMode.BUS: per_pkt_factor(
            ds.lci[TransportMode.BUS],
            ds.private_car_ltm_km,
            occ.get(TransportMode.BUS),
        ),
        TransportMode.CARPOOL: carpool_factor(
            car_lci, ds.private_car_ltm_km, occ.get(TransportMode.CARPOOL)
        ),
    }
    for mode, value in ds.constants_g_per_pkt.items():
        factors[mode] = constant_factor(mode, value)

    baseline = ds.scenario(ds.default_scenario)
    pinned = dict(factors)
    pinned[TransportMode.CS] = cs_factor(car_lci, baseline, occ.get(TransportMode.CS))
    rule_modes = tuple(other_rule_modes or (
        TransportMode.CAR,
        TransportMode.CS,
        TransportMode.RAIL,
        TransportMode.BUS,
        TransportMode.BICYCLE,
        TransportMode.WALKING,
    ))
    factors[TransportMode.OTHER] = other_mode_factor(
        [pinned[m] for m in rule_modes]
    )
    return {m: factors[m] for m in sorted(factors, key=mode_sort_key)}


def canonical_factor_set(
    case: CaseDefinition, scenario_id: int
) -> dict[TransportMode, EmissionFactor]:
    """The published factor set bundled with a case."""
    factors = {
        mode: EmissionFactor(mode=mode, g_per_pkt=value, provenance=CANONICAL)
        for mode, value in case.canonical_factors.items()
    }
    try:
        cs_value = case.canonical_cs[int(scenario_id)]
    except KeyError:
        raise DomainError(
            f"{case.id}: no published shared-car factor for scenario {scenario_id}",
            field="scenario",
        ) from None
    factors[TransportMode.CS] = EmissionFactor(
        mode=TransportMode.CS, g_per_pkt=cs_value, provenance=CANONICAL
    )
    return {m: factors[m] for m in sorted(factors, key=mode_sort_key)}


def case_factor_set(
    ds: Dataset, case: CaseDefinition, scenario_id: int, factor_mode: str
) -> dict[TransportMode, EmissionFactor]:
    if factor_mode == CANONICAL:
        return canonical_factor_set(case, scenario_id)
    if factor_mode == COMPUTED:
        _, grid_value = ds.grids.resolve(case.grid_label)
        return computed_factor_set(
            ds,
            grid_value,
            ds.scenario(scenario_id),
            other_rule_modes=case.other_rule_modes,
        )
    raise DomainError(
        f"factor_mode must be one of {', '.join(FACTOR_MODES)}", field="factor_mode"
    )


def run_case_study(
    ds: Dataset,
    region: str,
    scenario: "int | None" = None,
    factor_mode: str = CANONICAL,
    no_modal_shift: bool = False,
    strict: bool = True,
) -> CaseStudyReport:
    """Run one bundled case study.

    strict rejects scenarios the survey never reported for the case;
    relaxing it computes them anyway.
    """
    case = ds.case(region)
    scenario_id = case.default_scenario if scenario is None else int(scenario)
    ds.scenario(scenario_id)
    if strict and scenario_id not in case.scenario_ids:
        supported = ", ".join(str(s) for s in case.scenario_ids)
        raise ScenarioNotApplicableError(
            f"{case.id} reports scenario(s) {supported} only; "
            f"scenario {scenario_id} was requested",
            field="scenario",
        )
    before, during = reconstruct_case(case)
    factors = case_factor_set(ds, case, scenario_id, factor_mode)
    if no_modal_shift:
        delta = delta_without_modal_shift(before, during, factors)
    else:
        delta = emissions_delta(before, during, factors)
    before_em = annual_emissions(before, factors)
    rate = -delta.total / before_em.total if before_em.total > 0 else None
    grid_label, grid_value = ds.grids.resolve(case.grid_label)
    return CaseStudyReport(
        case=case.id,
        label=case.label,
        scenario=scenario_id,
        factor_mode=factor_mode,
        no_modal_shift=no_modal_shift,
        grid_label=grid_label,
        grid_g_per_kwh=grid_value,
        before=before,
        during=during,
        factors=factors,
        delta=delta,
        before_emissions=before_em,
        reduction_rate=rate,
    )


def _swept_delta(
    base_factors: Mapping[TransportMode, EmissionFactor],
    replacement: EmissionFactor,
    before: MobilityProfile,
    during: MobilityProfile,
    no_modal_shift: bool,
) -> float:
    factors = dict(base_factors)
    factors[replacement.mode] = replacement
    if no_modal_shift:
        return delta_without_modal_shift(before, during, factors).total
    return emissions_delta(before, during, factors).total


def sweep_bus_occupancy(
    ds: Dataset,
    region: str = "calgary",
    values: "Sequence[float] | None" = None,
    scenario: "int | None" = None,
    factor_mode: str = CANONICAL,
) -> SweepResult:
    """Total emission change as a function of average bus occupancy.

    The bus factor is recomputed from its inventory at each occupancy; every
    other factor, including the residual 'other', stays at its baseline
    value so the curve isolates the occupancy assumption.
    """
    report = run_case_study(ds, region, scenario=scenario, factor_mode=factor_mode)
    values = list(values) if values else [5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0]
    for v in values:
        if v < 1.0:
            raise DomainError("bus occupancy must be >= 1", field="points")
    if sorted(values) != sorted(set(values)):
        raise DomainError("sweep values must not repeat", field="points")
    bus_lci = ds.lci[TransportMode.BUS]
    points = []
    for occ in sorted(values):
        factor = per_pkt_factor(bus_lci, ds.private_car_ltm_km, occ)
        total = _swept_delta(
            report.factors, factor, report.before, report.during, report.no_modal_shift
        )
        points.append(SweepPoint(value=float(occ), total_delta_kg=total))
    baseline_occ = ds.occupancy.get(TransportMode.BUS)
    baseline = SweepPoint(
        value=baseline_occ,
        total_delta_kg=report.delta.total,
        label="baseline",
    )
    return SweepResult(
        parameter="bus_occupancy",
        unit="passengers",
        case=report.case,
        scenario=report.scenario,
        factor_mode=factor_mode,
        points=tuple(points),
        baseline=baseline,
    )


def sweep_electricity_grid(
    ds: Dataset,
    region: str = "san_francisco",
    grids: "Sequence[str | float] | None" = None,
    scenario: "int | None" = None,
    factor_mode: str = CANONICAL,
) -> SweepResult:
    """Total emission change as a function of grid carbon intensity.

    Only the rail factor is grid-bound in the bundled inventories, so the
    curve shows how far rail-heavy substitution profiles depend on clean
    electricity. Accepts grid labels or bare intensities.
    """
    report = run_case_study(ds, region, scenario=scenario, factor_mode=factor_mode)
    refs: Sequence = grids if grids else ["VT", "WA", "CA", "MA", "DC"]
    resolved = [ds.grids.resolve(g) for g in refs]
    values = [v for _, v in resolved]
    if len(set(values)) != len(values):
        raise DomainError("sweep values must not repeat", field="points")
    rail_lci = ds.lci[TransportMode.RAIL]
    rail_occ = ds.occupancy.get(TransportMode.RAIL)
    points = []
    for label, value in sorted(resolved, key=lambda pair: pair[1]):
        factor = per_pkt_factor(rail_lci, ds.private_car_ltm_km, rail_occ, value)
        total = _swept_delta(
            report.factors, factor, report.before, report.during, report.no_modal_shift
        )
        points.append(
            SweepPoint(
                value=value,
                total_delta_kg=total,
                label=None if label == "custom" else label,
            )
        )
    baseline = SweepPoint(
        value=report.grid_g_per_kwh,
        total_delta_kg=report.delta.total,
        label=report.grid_label,
    )
    return SweepResult(
        parameter="grid_intensity",
        unit="g_co2e_per_kwh",
        case=report.case,
        scenario=report.scenario,
        factor_mode=factor_mode,
        points=tuple(points),
        baseline=baseline,
    )
