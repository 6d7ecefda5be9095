"""AI server fleet electricity and recoverable waste heat.

A fleet is a list of :class:`ServerClassSpec` records. Each record stands for
``unit_count`` identical servers of one class; rated power is per unit (kW)
and duty hours are per unit unless ``hours_mode="aggregate"``, in which case
they are fleet-aggregated unit-hours for the whole record.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from aidc_dac.errors import ValidationError
from aidc_dac.units import MONTHS, check_month, hours_in_month, kwh_to_mwh

SERVER_CLASSES = ("AI-8GPU", "AI-4GPU", "AI-2GPU", "AI-NonAccel")
LOADS = ("train", "inference", "idle")
HOURS_MODES = ("per_unit", "aggregate")

# Liquid-cooled (>= 60 C) share of dissipated heat per server class.
DEFAULT_RECOVERY_FACTORS = {
    "AI-8GPU": 0.89,
    "AI-4GPU": 0.78,
    "AI-2GPU": 0.69,
    "AI-NonAccel": 0.46,
}


@dataclass(frozen=True)
class ServerClassSpec:
    class_id: str
    gpu_count: int
    rated_power: Mapping[str, float]
    duty_hours: Mapping[tuple[str, int], float]
    rho: float
    unit_count: int = 1
    label: str = field(default="", compare=False)

    @property
    def name(self) -> str:
        return self.label or f"{self.class_id} x{self.unit_count}"

    def validate(self, hours_mode: str = "per_unit") -> None:
        where = f"server record {self.name}"
        if self.class_id not in SERVER_CLASSES:
            raise ValidationError(f"{where}: unknown class_id {self.class_id!r}")
        if self.gpu_count < 0:
            raise ValidationError(f"{where}: gpu_count must be >= 0")
        if self.unit_count < 0:
            raise ValidationError(f"{where}: unit_count must be >= 0")
        if not (math.isfinite(self.rho) and 0.0 <= self.rho <= 1.0):
            raise ValidationError(f"{where}: recovery factor rho={self.rho} outside [0, 1]")
        for load, power in self.rated_power.items():
            if load not in LOADS:
                raise ValidationError(f"{where}: unknown load {load!r}")
            if not math.isfinite(power) or power < 0:
                raise ValidationError(f"{where}: negative or non-finite rated power {power} kW for load {load!r}")
            if load in ("train", "inference") and power <= 0:
                raise ValidationError(f"{where}: rated power for {load!r} must be > 0")
        for (load, month), hours in self.duty_hours.items():
            if load not in LOADS:
                raise ValidationError(f"{where}: unknown load {load!r}")
            check_month(month)
            if not math.isfinite(hours) or hours < 0:
                raise ValidationError(f"{where}: negative or non-finite duty hours {hours} for ({load}, month {month})")
            if hours > 0 and load not in self.rated_power:
                raise ValidationError(f"{where}: duty hours given for load {load!r} without a rated power")
        if hours_mode not in HOURS_MODES:
            raise ValidationError(f"hours_mode must be one of {HOURS_MODES}, got {hours_mode!r}")
        for month in MONTHS:
            used = math.fsum(self.duty_hours.get((load, month), 0.0) for load in LOADS)
            limit = hours_in_month(month)
            if hours_mode == "aggregate":
                limit *= self.unit_count
            if used > limit * (1 + 1e-12):
                raise ValidationError(
                    f"{where}: month {month} duty hours {used} exceed available {limit} ({hours_mode})")

    def month_electricity(self, month: int, hours_mode: str = "per_unit") -> float:
        """Server electricity of this record in ``month``, MWh."""
        kwh = math.fsum(
            self.rated_power.get(load, 0.0) * self.duty_hours.get((load, month), 0.0)
            for load in LOADS
        )
        if hours_mode == "per_unit":
            kwh *= self.unit_count
        return kwh_to_mwh(kwh)

    def scaled_hours(self, factor: float) -> ServerClassSpec:
        hours = {key: value * factor for key, value in self.duty_hours.items()}
        return ServerClassSpec(self.class_id, self.gpu_count, dict(self.rated_power), hours,
                               self.rho, self.unit_count, self.label)


@dataclass(frozen=True)
class FleetEnergyResult:
    annual_server_electricity: float
    monthly_waste_heat: dict[int, float]
    monthly_server_electricity: dict[int, float]


def _checked(fleet: Iterable[ServerClassSpec], hours_mode: str) -> list[ServerClassSpec]:
    fleet = list(fleet)
    if not fleet:
        raise ValidationError("server fleet is empty")
    for spec in fleet:
        spec.validate(hours_mode)
    return fleet


def monthly_server_electricity(fleet: Iterable[ServerClassSpec], month: int,
                               hours_mode: str = "per_unit") -> float:
    check_month(month)
    fleet = _checked(fleet, hours_mode)
    return math.fsum(spec.month_electricity(month, hours_mode) for spec in fleet)


def compute_server_electricity(fleet: Iterable[ServerClassSpec], hours_mode: str = "per_unit") -> float:
    """Annual national AI server electricity (MWh), summed over months, classes and loads.

    ``math.fsum`` keeps the total independent of record ordering.
    """
    fleet = _checked(fleet, hours_mode)
    return math.fsum(spec.month_electricity(month, hours_mode) for spec in fleet for month in MONTHS)


def compute_recoverable_heat(fleet: Iterable[ServerClassSpec], month: int,
                             hours_mode: str = "per_unit") -> float:
    """Recoverable low-grade waste heat in ``month`` (MWh): sum of rho times server electricity."""
    check_month(month)
    fleet = _checked(fleet, hours_mode)
    return math.fsum(spec.rho * spec.month_electricity(month, hours_mode) for spec in fleet)


def compute_fleet_energy(fleet: Iterable[ServerClassSpec], hours_mode: str = "per_unit") -> FleetEnergyResult:
    fleet = _checked(fleet, hours_mode)
    heat = {m: compute_recoverable_heat(fleet, m, hours_mode) for m in MONTHS}
    elec = {m: monthly_server_electricity(fleet, m, hours_mode) for m in MONTHS}
    return FleetEnergyResult(
        annual_server_electricity=math.fsum(elec.values()),
        monthly_waste_heat=heat,
        monthly_server_electricity=elec,
    )
