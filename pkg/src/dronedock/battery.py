"""Constant-power charge-time estimate for the drone battery."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateInput

__all__ = ["BatterySpec", "estimate_charge_time"]


@dataclass(frozen=True)
class BatterySpec:
    capacity: float  # Wh
    charge_efficiency: float = 1.0
    initial_soc: float = 0.0
    target_soc: float = 1.0

    def __post_init__(self):
        if not self.capacity > 0:
            raise ValueError("capacity must be > 0")
        if not 0 < self.charge_efficiency <= 1:
            raise ValueError("charge_efficiency must be in (0,1]")
        if not 0 <= self.initial_soc <= self.target_soc <= 1:
            raise ValueError("state of charge must satisfy 0 <= initial_soc <= target_soc <= 1")


def estimate_charge_time(battery: BatterySpec, delivered_power: float) -> float:
    """Hours to move from ``initial_soc`` to ``target_soc`` at constant power."""
    if not delivered_power > 0:
        raise DegenerateInput("delivered_power must be > 0")
    energy = battery.capacity * (battery.target_soc - battery.initial_soc)
    return energy / (delivered_power * battery.charge_efficiency)
