"""Loading of the bundled data files into typed objects.

The package ships its reference data as JSON under ``mobishift/data``:
vehicle inventories, grid mixes and intensities, lifetime scenarios,
occupancies and one file per case study. An alternative directory with the
same layout can be given explicitly or through the MOBISHIFT_DATA_DIR
environment variable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping

from .errors import ConfigurationError, DomainError, UnknownCaseError, UnknownGridError
from .factors import (
    EnergyProfile,
    LtmScenario,
    OccupancySpec,
    TechEmissionFactors,
    VehicleLci,
    grid_electricity_factor,
)
from .modes import LifeCycleStage, TransportMode
from .redistribution import CaseInputs, SubstitutionProfile

ENV_DATA_DIR = "MOBISHIFT_DATA_DIR"

CUSTOM_GRID_LABEL = "custom"


@dataclass(frozen=True)
class GridCatalog:
    """Known grids: generation-mix profiles plus direct intensities."""

    tech: TechEmissionFactors
    profiles: Mapping[str, EnergyProfile]
    direct: Mapping[str, tuple[str, float]]
    default_label: str

    def labels(self) -> list[str]:
        return sorted(set(self.profiles) | set(self.direct))

    def resolve(self, grid: "str | float | int | None") -> tuple[str, float]:
        """Turn a grid reference into (label, g CO2-eq/kWh).

        Accepts a known label (case-insensitive), a bare number meaning a
        custom intensity, or None for the default grid.
        """
        if grid is None:
            return self.resolve(self.default_label)
        if isinstance(grid, (int, float)) and not isinstance(grid, bool):
            value = float(grid)
            if value < 0:
                raise DomainError("grid intensity must be >= 0", field="grid")
            return (CUSTOM_GRID_LABEL, value)
        label = str(grid).strip()
        upper = label.upper()
        if upper in self.profiles:
            return (upper, grid_electricity_factor(self.profiles[upper], self.tech))
        if upper in self.direct:
            return (upper, self.direct[upper][1])
        try:
            return self.resolve(float(label))
        except ValueError:
            raise UnknownGridError(
                f"unknown grid {label!r}; known labels: {', '.join(self.labels())}",
                field="grid",
            ) from None


@dataclass(frozen=True)
class CaseDefinition:
    """One bundled case study: anchors, shares, factors and published outputs."""

    id: str
    label: str
    aliases: tuple[str, ...]
    reconstruction: str
    grid_label: str
    scenario_ids: tuple[int, ...]
    default_scenario: int
    inputs: CaseInputs
    canonical_factors: Mapping[TransportMode, float]
    canonical_cs: Mapping[int, float]
    other_rule_modes: tuple[TransportMode, ...]
    expected: Mapping = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def modes(self) -> tuple[TransportMode, ...]:
        out = list(self.canonical_factors)
        out.append(TransportMode.CS)
        return tuple(out)


@dataclass(frozen=True)
class Dataset:
    """Everything the engine needs, loaded from one data directory."""

    lci: Mapping[TransportMode, VehicleLci]
    constants_g_per_pkt: Mapping[TransportMode, float]
    private_car_ltm_km: float
    grids: GridCatalog
    scenarios: Mapping[int, LtmScenario]
    default_scenario: int
    occupancy: OccupancySpec
    cases: Mapping[str, CaseDefinition]

    def scenario(self, scenario_id: int) -> LtmScenario:
        try:
            return self.scenarios[int(scenario_id)]
        except (KeyError, TypeError, ValueError):
            known = ", ".join(str(s) for s in sorted(self.scenarios))
            raise DomainError(
                f"unknown scenario {scenario_id!r}; known: {known}",
                field="scenario",
            ) from None

    def case(self, region: str) -> CaseDefinition:
        key = str(region).strip().lower().replace("-", "_")
        for case in self.cases.values():
            if key == case.id or key in case.aliases:
                return case
        raise UnknownCaseError(
            f"unknown case study {region!r}; known: {', '.join(sorted(self.cases))}",
            field="case",
        )


def _stage_map(raw: Mapping[str, float]) -> dict[LifeCycleStage, float]:
    return {LifeCycleStage(stage): float(value) for stage, value in raw.items()}


def _mode_map(raw: Mapping[str, float]) -> dict[TransportMode, float]:
    return {TransportMode.parse(mode): float(value) for mode, value in raw.items()}


def _load_json(root: Path, name: str) -> dict:
    path = root / name
    if not path.is_file():
        raise ConfigurationError(f"data file not found: {path}", field=name)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid JSON ({exc})", field=name) from exc


def _load_case(raw: dict) -> CaseDefinition:
    profile = SubstitutionProfile(
        weights=_mode_map(raw["substitution"]["weights"]),
        not_travelled=float(raw["substitution"].get("not_travelled", 0.0)),
    )
    anchors = raw.get("anchors", {})
    non_car = anchors.get("non_car_before_km")
    inputs = CaseInputs(
        region=raw["id"],
        profile=profile,
        total_before_km=anchors.get("total_before_km"),
        car_before_km=anchors.get("car_before_km"),
        car_during_km=anchors.get("car_during_km"),
        cs_during_km=anchors.get("cs_during_km"),
        cs_share_of_during=anchors.get("cs_share_of_during"),
        rail_during_km=anchors.get("rail_during_km"),
        driving_decrease=anchors.get("driving_decrease"),
        car_decrease_km=anchors.get("car_decrease_km"),
        non_car_before_km=_mode_map(non_car) if non_car else None,
    )
    canonical_raw = dict(raw["canonical_factors_g_per_pkt"])
    cs_raw = canonical_raw.pop("cs", {})
    return CaseDefinition(
        id=raw["id"],
        label=raw.get("label", raw["id"]),
        aliases=tuple(a.lower() for a in raw.get("aliases", [])),
        reconstruction=raw["reconstruction"],
        grid_label=raw["grid"],
        scenario_ids=tuple(int(s) for s in raw["scenarios"]),
        default_scenario=int(raw["default_scenario"]),
        inputs=inputs,
        canonical_factors=_mode_map(canonical_raw),
        canonical_cs={int(k): float(v) for k, v in cs_raw.items()},
        other_rule_modes=tuple(
            TransportMode.parse(m) for m in raw.get("other_rule_modes", [])
        ),
        expected=raw.get("expected", {}),
        notes=tuple(raw.get("notes", [])),
    )


def bundled_data_dir() -> Path:
    return Path(str(resources.files("mobishift") / "data"))


def load_dataset(data_dir: "str | Path | None" = None) -> Dataset:
    """Load a data directory (bundled one by default) into a Dataset."""
    if data_dir is None:
        data_dir = os.environ.get(ENV_DATA_DIR) or bundled_data_dir()
    root = Path(data_dir)
    if not root.is_dir():
        raise ConfigurationError(f"data directory not found: {root}", field="data_dir")

    lci_raw = _load_json(root, "lci.json")
    vehicles: dict[TransportMode, VehicleLci] = {}
    for mode_name, entry in lci_raw["vehicles"].items():
        mode = TransportMode.parse(mode_name)
        vehicles[mode] = VehicleLci(
            mode=mode,
            fixed_lifetime_kg=_stage_map(entry.get("fixed_lifetime_kg", {})),
            per_vkt_kg=_stage_map(entry.get("per_vkt_kg", {})),
            per_vkt_mj=_stage_map(entry.get("per_vkt_mj", {})),
        )
    constants = _mode_map(lci_raw.get("constant_g_per_pkt", {}))

    grids_raw = _load_json(root, "grids.json")
    tech = TechEmissionFactors(
        g_per_kwh={k: float(v) for k, v in grids_raw["technology_g_per_kwh"].items()}
    )
    profiles = {
        label.upper(): EnergyProfile(
            label=entry.get("label", label),
            shares={k: float(v) for k, v in entry["shares"].items()},
        )
        for label, entry in grids_raw.get("profiles", {}).items()
    }
    direct = {
        label.upper(): (entry.get("label", label), float(entry["value"]))
        for label, entry in grids_raw.get("direct_g_per_kwh", {}).items()
    }
    grids = GridCatalog(
        tech=tech,
        profiles=profiles,
        direct=direct,
        default_label=str(grids_raw.get("default", next(iter(direct), "NL")) ).upper(),
    )

    scen_raw = _load_json(root, "scenarios.json")
    scenarios = {
        int(s["id"]): LtmScenario(
            id=int(s["id"]),
            label=s.get("label", str(s["id"])),
            age_years=float(s["age_years"]),
            annual_km=float(s["annual_km"]),
        )
        for s in scen_raw["scenarios"]
    }

    occupancy = OccupancySpec(per_mode=_mode_map(_load_json(root, "occupancy.json")))

    cases: dict[str, CaseDefinition] = {}
    case_dir = root / "case_studies"
    if case_dir.is_dir():
        for path in sorted(case_dir.glob("*.json")):
            case = _load_case(json.loads(path.read_text(encoding="utf-8")))
            cases[case.id] = case

    return Dataset(
        lci=vehicles,
        constants_g_per_pkt=constants,
        private_car_ltm_km=float(lci_raw.get("private_car_ltm_km", 240000.0)),
        grids=grids,
        scenarios=scenarios,
        default_scenario=int(scen_raw.get("default", 1)),
        occupancy=occupancy,
        cases=cases,
    )
