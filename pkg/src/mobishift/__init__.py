"""Life-cycle emission accounting for car-sharing mobility shifts.

The package computes per-passenger-km emission factors from life-cycle
inventories, reconstructs member mobility profiles from survey anchors,
evaluates the net emission change of joining a car-sharing service for
three bundled case studies, runs sensitivity sweeps, and adds fleet
analytics (inspection-register survival regression and mileage tables).
An HTTP JSON API and a CLI expose the same engine.
"""

__version__ = "0.1.0"

from .cases import (
    CaseStudyReport,
    SweepPoint,
    SweepResult,
    canonical_factor_set,
    computed_factor_set,
    run_case_study,
    sweep_bus_occupancy,
    sweep_electricity_grid,
)
from .datasets import Dataset, load_dataset
from .errors import (
    ConfigurationError,
    DomainError,
    InconsistentAnchorError,
    MissingFactorError,
    MissingGridError,
    MobishiftError,
    ScenarioNotApplicableError,
    UnknownCaseError,
    UnknownGridError,
)
from .factors import (
    EmissionFactor,
    EnergyProfile,
    LtmScenario,
    OccupancySpec,
    TechEmissionFactors,
    VehicleLci,
    carpool_factor,
    constant_factor,
    cs_factor,
    grid_electricity_factor,
    other_mode_factor,
    per_pkt_factor,
)
from .fleet import (
    ElvExtraction,
    ElvObservation,
    FleetMileageReport,
    FleetUsageEntry,
    InspectionRecord,
    LifetimeEntry,
    RegressionResult,
    annualized_mileage,
    average_private_ltm,
    balance_dataset,
    extract_elvs,
    fleet_annual_mileage,
    logit_fit,
    read_inspection_csv,
    regress_elvs,
    synthetic_inspection_records,
)
from .mobility import (
    EmissionsBreakdown,
    MobilityProfile,
    annual_emissions,
    delta_without_modal_shift,
    emissions_delta,
)
from .modes import MODE_ORDER, LifeCycleStage, TransportMode
from .redistribution import (
    CaseInputs,
    SubstitutionProfile,
    calgary_profiles,
    netherlands_profiles,
    proportional_allocate,
    san_francisco_profiles,
)

__all__ = [
    "__version__",
    "CaseInputs",
    "CaseStudyReport",
    "ConfigurationError",
    "Dataset",
    "DomainError",
    "ElvExtraction",
    "ElvObservation",
    "EmissionFactor",
    "EmissionsBreakdown",
    "EnergyProfile",
    "FleetMileageReport",
    "FleetUsageEntry",
    "InconsistentAnchorError",
    "InspectionRecord",
    "LifeCycleStage",
    "LifetimeEntry",
    "LtmScenario",
    "MissingFactorError",
    "MissingGridError",
    "MobilityProfile",
    "MobishiftError",
    "MODE_ORDER",
    "OccupancySpec",
    "RegressionResult",
    "ScenarioNotApplicableError",
    "SubstitutionProfile",
    "SweepPoint",
    "SweepResult",
    "TechEmissionFactors",
    "TransportMode",
    "UnknownCaseError",
    "UnknownGridError",
    "VehicleLci",
    "annual_emissions",
    "annualized_mileage",
    "average_private_ltm",
    "balance_dataset",
    "calgary_profiles",
    "canonical_factor_set",
    "carpool_factor",
    "computed_factor_set",
    "constant_factor",
    "cs_factor",
    "delta_without_modal_shift",
    "emissions_delta",
    "extract_elvs",
    "fleet_annual_mileage",
    "grid_electricity_factor",
    "load_dataset",
    "logit_fit",
    "netherlands_profiles",
    "other_mode_factor",
    "per_pkt_factor",
    "proportional_allocate",
    "read_inspection_csv",
    "regress_elvs",
    "run_case_study",
    "san_francisco_profiles",
    "sweep_bus_occupancy",
    "sweep_electricity_grid",
    "synthetic_inspection_records",
]
