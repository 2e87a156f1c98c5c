"""Mobility profiles and annual emission accounting.

Annual emissions are the sum over modes of travelled distance times the
mode's per-passenger-km factor. Comparing the profile before car-sharing
with the profile during membership gives the net emission change per
member and year; negative totals are reductions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import DomainError, MissingFactorError
from .factors import EmissionFactor
from .modes import TransportMode, mode_sort_key

FactorMap = Mapping[TransportMode, EmissionFactor]


@dataclass(frozen=True)
class MobilityProfile:
    """Annual travelled distance per mode, km per person and year."""

    label: str
    distances: Mapping[TransportMode, float] = field(default_factory=dict)

    def __post_init__(self):
        for mode, km in self.distances.items():
            if km < 0:
                raise DomainError(
                    f"{self.label or 'profile'}: distance for {mode.value} "
                    "must be >= 0",
                    field=mode.value,
                )

    def distance(self, mode: TransportMode) -> float:
        return self.distances.get(mode, 0.0)

    @property
    def total_km(self) -> float:
        return sum(self.distances.values())

    def modes(self) -> tuple[TransportMode, ...]:
        return tuple(sorted(self.distances, key=mode_sort_key))


@dataclass(frozen=True)
class EmissionsBreakdown:
    """Per-mode emissions in kg CO2-eq per year, with their total."""

    per_mode: Mapping[TransportMode, float]
    total: float

    @classmethod
    def from_per_mode(
        cls, per_mode: Mapping[TransportMode, float]
    ) -> "EmissionsBreakdown":
        ordered = {
            mode: per_mode[mode] for mode in sorted(per_mode, key=mode_sort_key)
        }
        return cls(per_mode=ordered, total=sum(ordered.values()))


def _require_factor(mode: TransportMode, factors: FactorMap) -> EmissionFactor:
    try:
        return factors[mode]
    except KeyError:
        raise MissingFactorError(
            f"no emission factor for mode {mode.value!r}", field=mode.value
        ) from None


def annual_emissions(profile: MobilityProfile, factors: FactorMap) -> EmissionsBreakdown:
    """Emissions of one profile, kg CO2-eq per year.

    Every mode with nonzero distance needs a factor; modes listed with zero
    distance contribute zero regardless.
    """
    per_mode: dict[TransportMode, float] = {}
    for mode in profile.modes():
        km = profile.distance(mode)
        if km == 0.0:
            per_mode[mode] = 0.0
            continue
        factor = _require_factor(mode, factors)
        per_mode[mode] = km * factor.g_per_pkt / 1000.0
    return EmissionsBreakdown.from_per_mode(per_mode)


def emissions_delta(
    before: MobilityProfile, during: MobilityProfile, factors: FactorMap
) -> EmissionsBreakdown:
    """Per-mode emission change from the before profile to the during one.

    Equals annual_emissions(during) minus annual_emissions(before), mode by
    mode, over the union of modes present in either profile.
    """
    modes = sorted(set(before.distances) | set(during.distances), key=mode_sort_key)
    per_mode: dict[TransportMode, float] = {}
    for mode in modes:
        diff_km = during.distance(mode) - before.distance(mode)
        if before.distance(mode) == 0.0 and during.distance(mode) == 0.0:
            per_mode[mode] = 0.0
            continue
        factor = _require_factor(mode, factors)
        per_mode[mode] = diff_km * factor.g_per_pkt / 1000.0
    return EmissionsBreakdown.from_per_mode(per_mode)


def delta_without_modal_shift(
    before: MobilityProfile, during: MobilityProfile, factors: FactorMap
) -> EmissionsBreakdown:
    """Counterfactual change ignoring the shift to other modes.

    Only the car-km displaced and the shared-car-km added are counted, the
    accounting convention of earlier car-sharing studies. All other modes
    contribute zero by construction.
    """
    per_mode: dict[TransportMode, float] = {
        mode: 0.0
        for mode in sorted(set(before.distances) | set(during.distances), key=mode_sort_key)
    }
    car = _require_factor(TransportMode.CAR, factors)
    cs = _require_factor(TransportMode.CS, factors)
    car_diff = during.distance(TransportMode.CAR) - before.distance(TransportMode.CAR)
    per_mode[TransportMode.CAR] = car_diff * car.g_per_pkt / 1000.0
    per_mode[TransportMode.CS] = (
        during.distance(TransportMode.CS) - before.distance(TransportMode.CS)
    ) * cs.g_per_pkt / 1000.0
    return EmissionsBreakdown.from_per_mode(per_mode)
