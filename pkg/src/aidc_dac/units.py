"""Unit constants and calendar helpers.

Internal units: MWh for energy, tonnes for CO2 mass, kg CO2/MWh for grid
emission factors, $/MWh for prices.
"""

from __future__ import annotations

GJ_PER_MWH = 3.6
KG_PER_TONNE = 1000.0
KW_PER_MW = 1000.0
HOURS_PER_YEAR = 8760.0

MONTHS = tuple(range(1, 13))

# Fixed 365-day calendar; scenario year labels are labels, not calendar years.
DAYS_IN_MONTH = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


def hours_in_month(month: int) -> float:
    check_month(month)
    return 24.0 * DAYS_IN_MONTH[month - 1]


def check_month(month: int) -> int:
    if not isinstance(month, int) or isinstance(month, bool) or not 1 <= month <= 12:
        raise ValueError(f"month must be an integer in 1..12, got {month!r}")
    return month


def gj_to_mwh(value: float) -> float:
    return value / GJ_PER_MWH


def mwh_to_gj(value: float) -> float:
    return value * GJ_PER_MWH


def kwh_to_mwh(value: float) -> float:
    return value / KW_PER_MW
