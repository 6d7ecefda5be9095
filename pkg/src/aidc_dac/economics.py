"""Per-tonne OPEX, annualized CAPEX and levelized cost of CO2 capture."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from aidc_dac.errors import ModelError, ValidationError
from aidc_dac.units import HOURS_PER_YEAR, MONTHS, hours_in_month

CAPEX_ITEMS = ("heat_pump", "dac_module", "fan", "absorbent", "other")
CAPACITY_BASES = ("per_t_per_yr", "per_MW_heat", "per_MW_elec")


@dataclass(frozen=True)
class CapexItem:
    item_id: str
    unit_cost: float  # $ per capacity unit
    capacity_basis: str
    lifetime: float  # years
    replacement_interval: float | None = None  # years; absorbent only

    def validate(self) -> None:
        if self.item_id not in CAPEX_ITEMS:
            raise ValidationError(f"unknown capex item {self.item_id!r}")
        if self.capacity_basis not in CAPACITY_BASES:
            raise ValidationError(f"unknown capacity basis {self.capacity_basis!r}")
        if not (math.isfinite(self.unit_cost) and self.unit_cost >= 0):
            raise ValidationError(f"{self.item_id}: unit_cost must be >= 0")
        if not self.lifetime > 0:
            raise ValidationError(f"{self.item_id}: lifetime must be > 0, got {self.lifetime}")
        if self.replacement_interval is not None and not self.replacement_interval > 0:
            raise ValidationError(f"{self.item_id}: replacement interval must be > 0")

    @property
    def annualization_years(self) -> float:
        if self.item_id == "absorbent" and self.replacement_interval is not None:
            return self.replacement_interval
        return self.lifetime


def crf(rate: float, years: float) -> float:
    """Capital recovery factor r(1+r)^n / ((1+r)^n - 1); 1/n when r = 0."""
    if not years > 0:
        raise ValidationError(f"annualization period must be > 0 years, got {years}")
    if rate < 0:
        raise ValidationError(f"discount rate must be >= 0, got {rate}")
    if rate == 0:
        return 1.0 / years
    # expm1/log1p keep precision for tiny rates
    growth = math.expm1(years * math.log1p(rate))
    return rate * (growth + 1.0) / growth


def monthly_weights(monthly_capture: Mapping[int, float]) -> dict[int, float]:
    """Share of annual capture falling in each month; months not given count as zero."""
    for month, value in monthly_capture.items():
        if month not in MONTHS:
            raise ValueError(f"month {month} outside 1..12")
        if value < 0 or not math.isfinite(value):
            raise ModelError(f"monthly capture must be finite and >= 0, got {value} in month {month}")
    total = math.fsum(monthly_capture.values())
    if not total > 0:
        raise ModelError("annual capture is zero; monthly weights undefined")
    return {m: monthly_capture.get(m, 0.0) / total for m in MONTHS}


def _monthly(value: float | Mapping[int, float], month: int) -> float:
    return value[month] if isinstance(value, Mapping) else value


def state_opex(price: float, beta: Mapping[int, float], e_elec_per_t: Mapping[int, float],
               q_th_per_t: Mapping[int, float], eta: float, cop: float | Mapping[int, float],
               heat_loss: str = "single") -> float:
    """Operating cost per tonne ($/t).

    ``price * sum_t beta_t * (E_t + q_t * eta / COP)``, with ``eta**2`` in place
    of ``eta`` when ``heat_loss="squared"``. Standalone electric heating is the
    same expression with ``eta=1`` and the ambient-source COP.
    """
    if heat_loss not in ("single", "squared"):
        raise ValueError(f"heat_loss must be 'single' or 'squared', got {heat_loss!r}")
    loss = eta if heat_loss == "single" else eta * eta
    terms = []
    for month in MONTHS:
        weight = beta.get(month, 0.0)
        if weight == 0:
            continue
        if month not in e_elec_per_t or month not in q_th_per_t:
            raise ModelError(f"month {month} has capture weight {weight} but no per-tonne demand")
        terms.append(weight * (e_elec_per_t[month] + q_th_per_t[month] * loss / _monthly(cop, month)))
    return price * math.fsum(terms)


@dataclass(frozen=True)
class SizingResult:
    """Installed capacity and the month that set it (None for a sum of plants)."""

    capacity: float
    peak_month: int | None
    monthly: Mapping[int, float] = field(default_factory=dict, compare=False)

    @classmethod
    def total(cls, parts: Sequence[SizingResult]) -> SizingResult:
        return cls(math.fsum(p.capacity for p in parts), None)


def worst_month_sizing(monthly_demand: Mapping[int, float]) -> SizingResult:
    """Capacity for the least favorable month: the max, earliest month on ties."""
    if sorted(monthly_demand) != list(MONTHS):
        raise ValueError("worst-month sizing needs all 12 months")
    peak = max(MONTHS, key=lambda m: (monthly_demand[m], -m))
    return SizingResult(monthly_demand[peak], peak, dict(monthly_demand))


def capacity_demand(basis: str, month: int, capture_t: float, q_hi_mwh: float, e_dac_mwh: float) -> float:
    """Capacity a month's operation calls for, in the units of ``basis``.

    per_t_per_yr: capture rate annualized from the month; per_MW_heat: mean
    regeneration heat load; per_MW_elec: mean fan/auxiliary electric load.
    """
    hours = hours_in_month(month)
    if basis == "per_t_per_yr":
        return capture_t * HOURS_PER_YEAR / hours
    if basis == "per_MW_heat":
        return q_hi_mwh / hours
    if basis == "per_MW_elec":
        return e_dac_mwh / hours
    raise ValueError(f"unknown capacity basis {basis!r}")


def annualized_capex(items: Sequence[CapexItem], sizing: Mapping[str, SizingResult | float],
                     annual_capture: float, discount_rate: float) -> dict[str, float]:
    """Annualized capital cost per tonne captured ($/t) for each item."""
    if not annual_capture > 0:
        raise ModelError("annual capture must be > 0 to levelize capital cost")
    out = {}
    for item in items:
        item.validate()
        size = sizing[item.capacity_basis]
        capacity = size.capacity if isinstance(size, SizingResult) else float(size)
        annual = item.unit_cost * capacity * crf(discount_rate, item.annualization_years)
        out[item.item_id] = annual / annual_capture
    return out


def lccc(opex: float, capex_by_item: Mapping[str, float]) -> float:
    return opex + math.fsum(capex_by_item.values())


@dataclass(frozen=True)
class CostSummary:
    state_id: str
    scenario: str
    opex: float
    capex_by_item: dict[str, float]
    lccc: float
    beta: dict[int, float]
    annual_capture: float
