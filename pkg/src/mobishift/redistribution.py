"""Reconstruction of before/during mobility profiles from survey anchors.

Member surveys publish a handful of anchor quantities (total travel, car-km
before and during, shared-car-km, substitution shares) rather than full
profiles. Each region gets its anchors stretched into complete before and
during profiles by allocating the unanchored remainder proportionally to
the region's substitution shares.

The three survey designs differ in how displaced demand and induced demand
appear, so each region has its own reconstruction:

* netherlands: total before travel is known; members' "would not have
  travelled" share of shared-car-km is new demand, so total travel grows
  during membership.
* san_francisco: total during travel follows from the shared-car share;
  the "not travelled" share shrinks the before total instead.
* calgary: the survey reports exact before distances and an exact drop in
  car-km, so total travel is conserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DomainError, InconsistentAnchorError
from .mobility import MobilityProfile
from .modes import TransportMode, mode_sort_key

BEFORE_LABEL = "before"
DURING_LABEL = "during"


@dataclass(frozen=True)
class SubstitutionProfile:
    """Survey answer shares: which mode each shared-car km substituted.

    Weights are percentage points; together with the "would not have
    travelled" share they must cover the whole survey (sum to 100).
    """

    weights: Mapping[TransportMode, float]
    not_travelled: float = 0.0

    def __post_init__(self):
        for mode, w in self.weights.items():
            if w < 0:
                raise DomainError(
                    f"substitution weight for {mode.value} must be >= 0",
                    field=mode.value,
                )
        if self.not_travelled < 0:
            raise DomainError(
                "not_travelled share must be >= 0", field="not_travelled"
            )
        total = sum(self.weights.values()) + self.not_travelled
        if abs(total - 100.0) > 0.5:
            raise DomainError(
                f"substitution shares sum to {total:.2f}, expected 100",
                field="weights",
            )

    def alternatives(self) -> dict[TransportMode, float]:
        """Weights without the private-car entry."""
        return {
            m: w for m, w in self.weights.items() if m is not TransportMode.CAR
        }


@dataclass(frozen=True)
class CaseInputs:
    """Anchor quantities for one region's reconstruction.

    Which fields are required depends on the region; the reconstruction
    functions validate their own inputs.
    """

    region: str
    profile: SubstitutionProfile
    total_before_km: float | None = None
    car_before_km: float | None = None
    car_during_km: float | None = None
    cs_during_km: float | None = None
    cs_share_of_during: float | None = None
    rail_during_km: float | None = None
    driving_decrease: float | None = None
    car_decrease_km: float | None = None
    non_car_before_km: Mapping[TransportMode, float] | None = field(default=None)


def proportional_allocate(
    total: float, weights: Mapping[TransportMode, float]
) -> dict[TransportMode, float]:
    """Split a total over modes in proportion to their weights.

    The split sums to the total exactly: the last weighted mode in the
    canonical mode order absorbs the floating-point residue. Zero-weight
    modes receive exactly zero.
    """
    for mode, w in weights.items():
        if w < 0:
            raise DomainError(
                f"allocation weight for {mode.value} must be >= 0",
                field=mode.value,
            )
    if total < 0:
        raise DomainError("allocation total must be >= 0", field="total")
    ordered = sorted(weights, key=mode_sort_key)
    weight_sum = sum(weights.values())
    if total == 0.0:
        return {mode: 0.0 for mode in ordered}
    if weight_sum == 0.0:
        raise DomainError(
            "cannot allocate a positive total over all-zero weights",
            field="weights",
        )
    out: dict[TransportMode, float] = {}
    carrying = [m for m in ordered if weights[m] > 0]
    last = carrying[-1]
    allocated = 0.0
    for mode in ordered:
        if mode is last:
            continue
        share = total * weights[mode] / weight_sum
        out[mode] = share
        allocated += share
    out[last] = total - allocated
    result = {mode: out[mode] for mode in ordered}
    # total - allocated can leave the running sum an ulp away from the
    # total; nudge the absorbing mode until the sum lands exactly
    for _ in range(4):
        residue = sum(result.values()) - total
        if residue == 0.0:
            break
        result[last] -= residue
    else:
        # the prefix can sit half an ulp off the total's grid, where no
        # absorber value rounds the sum home; rebuild the shares as
        # multiples of the total's ulp, where every partial sum (and so
        # the full sum) is exact by construction
        tick = math.ulp(total)
        ticks = {
            mode: round(total * weights[mode] / weight_sum / tick)
            for mode in carrying[:-1]
        }
        ticks[last] = round(total / tick) - sum(ticks.values())
        result = {
            mode: ticks[mode] * tick if mode in ticks else 0.0 for mode in ordered
        }
    return result


def _merge(base: Mapping[TransportMode, float], extra: Mapping[TransportMode, float]) -> dict[TransportMode, float]:
    merged = dict(base)
    for mode, km in extra.items():
        merged[mode] = merged.get(mode, 0.0) + km
    return {m: merged[m] for m in sorted(merged, key=mode_sort_key)}


def netherlands_profiles(
    inputs: CaseInputs,
) -> tuple[MobilityProfile, MobilityProfile]:
    """Reconstruction for the Dutch national survey.

    Before: total travel and car-km are anchored; the remainder spreads over
    the non-car substitution weights. During: the "not travelled" share of
    shared-car-km is new demand, so the during total exceeds the before
    total by that amount; alternative modes grow to close the gap.
    """
    required = {
        "total_before_km": inputs.total_before_km,
        "car_before_km": inputs.car_before_km,
        "car_during_km": inputs.car_during_km,
        "cs_during_km": inputs.cs_during_km,
    }
    for name, value in required.items():
        if value is None:
            raise DomainError(f"{inputs.region}: anchor {name} is required", field=name)
        if value < 0:
            raise DomainError(f"{inputs.region}: anchor {name} must be >= 0", field=name)
    total_before = float(inputs.total_before_km)
    car_before = float(inputs.car_before_km)
    car_during = float(inputs.car_during_km)
    cs_during = float(inputs.cs_during_km)
    if car_before > total_before:
        raise InconsistentAnchorError(
            f"{inputs.region}: car-km before exceed total travel",
            field="car_before_km",
        )

    alternatives = inputs.profile.alternatives()
    before_rest = proportional_allocate(total_before - car_before, alternatives)
    before = _merge({TransportMode.CAR: car_before}, before_rest)

    induced = inputs.profile.not_travelled / 100.0 * cs_during
    total_during = total_before + induced
    gap = total_during - car_during - cs_during - sum(before_rest.values())
    if gap < 0:
        raise InconsistentAnchorError(
            f"{inputs.region}: anchored during travel exceeds the during total",
            field="cs_during_km",
        )
    growth = proportional_allocate(gap, alternatives)
    during = _merge(
        {TransportMode.CAR: car_during, TransportMode.CS: cs_during},
        _merge(before_rest, growth),
    )
    return (
        MobilityProfile(label=BEFORE_LABEL, distances=before),
        MobilityProfile(label=DURING_LABEL, distances=during),
    )


def san_francisco_profiles(
    inputs: CaseInputs,
) -> tuple[MobilityProfile, MobilityProfile]:
    """Reconstruction for the San Francisco member survey.

    During: the shared-car share of total travel fixes the during total;
    car, shared-car and rail are anchored and the rest spreads over the
    remaining substitution weights. Before: car-km follow from the reported
    driving decrease, and the "not travelled" share of shared-car-km is
    removed from the before total (that travel did not exist before).
    """
    required = {
        "cs_during_km": inputs.cs_during_km,
        "cs_share_of_during": inputs.cs_share_of_during,
        "rail_during_km": inputs.rail_during_km,
        "car_during_km": inputs.car_during_km,
        "driving_decrease": inputs.driving_decrease,
    }
    for name, value in required.items():
        if value is None:
            raise DomainError(f"{inputs.region}: anchor {name} is required", field=name)
    cs_during = float(inputs.cs_during_km)
    share = float(inputs.cs_share_of_during)
    rail_during = float(inputs.rail_during_km)
    car_during = float(inputs.car_during_km)
    decrease = float(inputs.driving_decrease)
    if not 0.0 < share < 1.0:
        raise DomainError(
            f"{inputs.region}: shared-car share must lie in (0, 1)",
            field="cs_share_of_during",
        )
    if not 0.0 <= decrease < 1.0:
        raise DomainError(
            f"{inputs.region}: driving decrease must lie in [0, 1)",
            field="driving_decrease",
        )
    if min(cs_during, rail_during, car_during) < 0:
        raise DomainError(
            f"{inputs.region}: anchored distances must be >= 0", field="anchors"
        )

    total_during = cs_during / share
    rest_during = total_during - cs_during - car_during - rail_during
    if rest_during < 0:
        raise InconsistentAnchorError(
            f"{inputs.region}: anchored during distances exceed the during total",
            field="rail_during_km",
        )
    rest_weights = {
        m: w
        for m, w in inputs.profile.alternatives().items()
        if m is not TransportMode.RAIL
    }
    during = _merge(
        {
            TransportMode.CAR: car_during,
            TransportMode.CS: cs_during,
            TransportMode.RAIL: rail_during,
        },
        proportional_allocate(rest_during, rest_weights),
    )

    car_before = (car_during + cs_during) / (1.0 - decrease)
    total_before = total_during - inputs.profile.not_travelled / 100.0 * cs_during
    rest_before = total_before - car_before
    if rest_before < 0:
        raise InconsistentAnchorError(
            f"{inputs.region}: car-km before exceed the before total",
            field="driving_decrease",
        )
    before = _merge(
        {TransportMode.CAR: car_before},
        proportional_allocate(rest_before, inputs.profile.alternatives()),
    )
    return (
        MobilityProfile(label=BEFORE_LABEL, distances=before),
        MobilityProfile(label=DURING_LABEL, distances=during),
    )


def calgary_profiles(
    inputs: CaseInputs, derive_before_from_weights: bool = False
) -> tuple[MobilityProfile, MobilityProfile]:
    """Reconstruction for the Calgary member survey.

    The survey reports exact before distances and an exact drop in car-km.
    Shared-car-km replace part of that drop; the rest returns to the
    alternative modes in proportion to their before distances, so total
    travel is conserved exactly.

    derive_before_from_weights ignores the reported non-car distances and
    rebuilds them from the rounded substitution shares instead; the rounded
    shares disagree with the reported distances by a few percent, so this
    variant is off by default.
    """
    required = {
        "car_before_km": inputs.car_before_km,
        "car_decrease_km": inputs.car_decrease_km,
        "cs_during_km": inputs.cs_during_km,
    }
    for name, value in required.items():
        if value is None:
            raise DomainError(f"{inputs.region}: anchor {name} is required", field=name)
        if value < 0:
            raise DomainError(f"{inputs.region}: anchor {name} must be >= 0", field=name)
    car_before = float(inputs.car_before_km)
    decrease = float(inputs.car_decrease_km)
    cs_during = float(inputs.cs_during_km)
    if decrease > car_before:
        raise InconsistentAnchorError(
            f"{inputs.region}: car-km drop exceeds car-km before",
            field="car_decrease_km",
        )
    if cs_during > decrease:
        raise InconsistentAnchorError(
            f"{inputs.region}: shared-car-km exceed the car-km drop",
            field="cs_during_km",
        )

    if derive_before_from_weights:
        car_weight = inputs.profile.weights.get(TransportMode.CAR, 0.0)
        if car_weight <= 0:
            raise DomainError(
                f"{inputs.region}: weight-derived mode needs a car weight",
                field="weights",
            )
        total_before = car_before / (car_weight / 100.0)
        non_car = proportional_allocate(
            total_before - car_before, inputs.profile.alternatives()
        )
    else:
        if not inputs.non_car_before_km:
            raise DomainError(
                f"{inputs.region}: anchor non_car_before_km is required",
                field="non_car_before_km",
            )
        non_car = {
            m: float(km) for m, km in inputs.non_car_before_km.items()
        }
        for mode, km in non_car.items():
            if km < 0:
                raise DomainError(
                    f"{inputs.region}: before distance for {mode.value} must be >= 0",
                    field=mode.value,
                )

    before = _merge({TransportMode.CAR: car_before}, non_car)
    returned = proportional_allocate(decrease - cs_during, non_car)
    during = _merge(
        {TransportMode.CAR: car_before - decrease, TransportMode.CS: cs_during},
        _merge(non_car, returned),
    )
    return (
        MobilityProfile(label=BEFORE_LABEL, distances=before),
        MobilityProfile(label=DURING_LABEL, distances=during),
    )
