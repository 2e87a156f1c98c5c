"""Transport modes and life-cycle stages used throughout the package."""

from __future__ import annotations

from enum import Enum


class TransportMode(str, Enum):
    """Travel modes tracked in mobility profiles.

    Declaration order is the canonical mode order: allocation routines and
    rendered outputs list modes in this order, and the last weighted mode in
    this order absorbs the float residue when a total is split proportionally.
    """

    CAR = "car"
    CS = "cs"
    RAIL = "rail"
    BUS = "bus"
    BICYCLE = "bicycle"
    WALKING = "walking"
    CARPOOL = "carpool"
    OTHER = "other"

    @classmethod
    def parse(cls, value: "str | TransportMode") -> "TransportMode":
        if isinstance(value, TransportMode):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"unknown transport mode: {value!r}") from None


MODE_ORDER: tuple[TransportMode, ...] = tuple(TransportMode)


def mode_sort_key(mode: TransportMode) -> int:
    """Position of a mode in the canonical order."""
    return MODE_ORDER.index(mode)


class LifeCycleStage(str, Enum):
    """Stages of a vehicle life cycle that contribute emissions."""

    INFRASTRUCTURE = "infrastructure"
    MANUFACTURING = "manufacturing"
    FUELS = "fuels"
    OPERATION = "operation"
