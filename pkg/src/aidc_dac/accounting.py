"""Gross capture, grid-electricity emissions, net removal and removal ratio.

One :class:`CaptureLedgerEntry` per county and month. The integrated case
upgrades the county's AIDC heat with the high-temperature heat pump; the
standalone case supplies regeneration heat from an ambient-source heat pump,
with the DAC size fixed by the scenario's sizing policy.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from aidc_dac.errors import ModelError
from aidc_dac.regions import ClimateSeries, CountyNode, RegionTree, StateNode
from aidc_dac.thermo import DacResponseSurface, HeatSupplySpec, heat_pump_electricity, upgrade_heat
from aidc_dac.units import HOURS_PER_YEAR, KG_PER_TONNE, MONTHS, hours_in_month

LEDGER_FIELDS = (
    "state_id", "county_id", "month", "temp_c", "rh", "cop",
    "q_lo_mwh", "q_hi_mwh", "q_th_mwh_per_t", "e_elec_mwh_per_t", "m_tot_t",
    "e_hp_mwh", "e_dac_mwh", "e_tot_mwh", "emissions_t", "m_net_contrib_t",
)


@dataclass(frozen=True)
class CaptureLedgerEntry:
    state_id: str
    county_id: str
    month: int
    temp_c: float
    rh: float
    cop: float
    q_lo: float
    q_hi: float
    q_th: float
    e_elec: float
    m_tot: float
    e_hp: float
    e_dac: float
    e_tot: float
    emissions: float
    m_net_contrib: float

    def row(self) -> tuple:
        return (self.state_id, self.county_id, self.month, self.temp_c, self.rh, self.cop,
                self.q_lo, self.q_hi, self.q_th, self.e_elec, self.m_tot,
                self.e_hp, self.e_dac, self.e_tot, self.emissions, self.m_net_contrib)


@dataclass(frozen=True)
class RemovalSummary:
    state_id: str
    county_id: str
    m_tot_annual: float
    m_net_annual: float
    aidc_electricity: float  # MWh, PUE included
    aidc_indirect_emissions: float
    removal_ratio: float | None  # None when the AIDC emits nothing
    pue: float


@dataclass(frozen=True)
class LedgerSettings:
    mode: str
    sizing: str
    integrated: HeatSupplySpec
    standalone: HeatSupplySpec
    surface: DacResponseSurface
    strict: bool = False
    fixed_capacity_t_per_yr: float | None = None


def monthly_capture(q_hi: float, q_th: float) -> float:
    """Gross CO2 captured (t) from regeneration heat ``q_hi`` (MWh) at ``q_th`` MWh/t."""
    if not q_th > 0:
        raise ModelError(f"per-tonne regeneration heat must be > 0, got {q_th}")
    return q_hi / q_th


def grid_emissions(e_tot: float, cef: float) -> float:
    """Tonnes CO2 from ``e_tot`` MWh at ``cef`` kg CO2/MWh."""
    return cef * e_tot / KG_PER_TONNE


def net_removal(entries: Iterable[CaptureLedgerEntry], cef: float) -> float:
    """Net removal (t): gross capture minus grid emissions, summed over the entries."""
    return math.fsum(e.m_tot - grid_emissions(e.e_tot, cef) for e in entries)


def removal_ratio(m_net: float, cef: float, alpha: float, gamma: float, pue: float,
                  e_ser: float) -> float | None:
    """Net removal divided by the county AIDC's indirect emissions.

    Returns None (undefined) when the denominator is zero.
    """
    denominator = grid_emissions(alpha * gamma * pue * e_ser, cef)
    if denominator == 0:
        return None
    return m_net / denominator


def _entry(state: StateNode, county: CountyNode, month: int, q_lo: float, q_hi: float, q_th: float,
           e_elec: float, cop: float, temp: float, rh: float) -> CaptureLedgerEntry:
    m_tot = monthly_capture(q_hi, q_th)
    e_hp = q_hi / cop
    e_dac = m_tot * e_elec
    e_tot = e_hp + e_dac
    emissions = grid_emissions(e_tot, state.cef)
    return CaptureLedgerEntry(state.state_id, county.county_id, month, temp, rh, cop, q_lo, q_hi, q_th, e_elec,
                              m_tot, e_hp, e_dac, e_tot, emissions, m_tot - emissions)


def county_ledger(state: StateNode, county: CountyNode, q_lo_by_month: Mapping[int, float],
                  settings: LedgerSettings, warnings: list[str] | None = None) -> list[CaptureLedgerEntry]:
    """Twelve ledger rows for one county given its monthly low-grade heat (MWh)."""
    out = []
    integ, alone = settings.integrated, settings.standalone
    for month in MONTHS:
        temp, rh = county.climate.at(month)
        q_th, e_elec = settings.surface.evaluate(temp, rh, strict=settings.strict, warnings=warnings)
        q_lo = q_lo_by_month[month]
        try:
            q_hi_int = upgrade_heat(q_lo, integ, integ.source_temp_c)
        except ValueError as exc:
            raise ModelError(f"county {county.county_id} month {month}: {exc}") from None
        if settings.mode == "integrated":
            out.append(_entry(state, county, month, q_lo, q_hi_int, q_th, e_elec,
                              integ.cop_at(integ.source_temp_c), temp, rh))
            continue
        cop = alone.cop_at(temp)
        if settings.sizing == "equal-heat":
            q_hi = q_hi_int
        elif settings.sizing == "equal-electricity":
            budget = heat_pump_electricity(q_hi_int, integ, integ.source_temp_c) + q_hi_int / q_th * e_elec
            q_hi = budget / (e_elec + q_th / cop) * q_th
        elif settings.sizing == "fixed-capacity":
            share = state.alpha * county.gamma
            capture = settings.fixed_capacity_t_per_yr * share * hours_in_month(month) / HOURS_PER_YEAR
            q_hi = capture * q_th
        else:
            raise ModelError(f"unknown sizing policy {settings.sizing!r}")
        out.append(_entry(state, county, month, q_lo, q_hi, q_th, e_elec, cop, temp, rh))
    return out


def build_ledger(tree: RegionTree, q_tot_by_month: Mapping[int, float], settings: LedgerSettings,
                 threads: int = 1, warnings: list[str] | None = None) -> list[CaptureLedgerEntry]:
    """Ledger for every county, ordered by state, county, month.

    County work may fan out to ``threads`` workers; results are merged in tree
    order so the output does not depend on the worker count.
    """
    jobs = []
    for state in tree.states:
        for county in state.counties:
            share = state.alpha * county.gamma
            jobs.append((state, county, {m: share * q_tot_by_month[m] for m in MONTHS}))

    def work(job):
        state, county, q_lo = job
        local: list[str] = []
        return county_ledger(state, county, q_lo, settings, local), local

    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, jobs))
    else:
        results = [work(job) for job in jobs]
    ledger = []
    for rows, local in results:
        ledger.extend(rows)
        if warnings is not None:
            warnings.extend(local)
    return ledger


def summarize_counties(tree: RegionTree, ledger: Sequence[CaptureLedgerEntry], pue: float,
                       e_ser: float) -> list[RemovalSummary]:
    by_county: dict[str, list[CaptureLedgerEntry]] = {}
    for entry in ledger:
        by_county.setdefault(entry.county_id, []).append(entry)
    out = []
    for state, county in tree.counties():
        rows = by_county.get(county.county_id, [])
        m_net = net_removal(rows, state.cef)
        electricity = state.alpha * county.gamma * pue * e_ser
        out.append(RemovalSummary(
            state.state_id, county.county_id,
            m_tot_annual=math.fsum(e.m_tot for e in rows),
            m_net_annual=m_net,
            aidc_electricity=electricity,
            aidc_indirect_emissions=grid_emissions(electricity, state.cef),
            removal_ratio=removal_ratio(m_net, state.cef, state.alpha, county.gamma, pue, e_ser),
            pue=pue,
        ))
    return out


def state_removal_ratio(summaries: Iterable[RemovalSummary]) -> float | None:
    """Aggregate ratio for a group of counties: total net removal over total indirect emissions."""
    summaries = list(summaries)
    denominator = math.fsum(s.aidc_indirect_emissions for s in summaries)
    if denominator == 0:
        return None
    return math.fsum(s.m_net_annual for s in summaries) / denominator


@dataclass(frozen=True)
class SensitivityRow:
    temp_c: float
    cef: float
    phi_baseline: float | None
    phi_integrated: float | None

    @property
    def uplift(self) -> float | None:
        if self.phi_baseline is None or self.phi_integrated is None:
            return None
        return self.phi_integrated - self.phi_baseline


def sensitivity_curve(q_tot_by_month: Mapping[int, float], e_ser: float, pue: float,
                      settings: LedgerSettings, cef_values: Sequence[float], temp_c: float,
                      rh: float) -> list[SensitivityRow]:
    """Removal ratio versus grid CEF for one synthetic county, both scenarios.

    The county hosts the whole fleet (alpha = gamma = 1) under a constant
    climate ``(temp_c, rh)``. Capture and electricity do not depend on CEF, so
    each scenario's ledger is built once and re-priced for every CEF value.
    """
    county = CountyNode("synthetic", 1.0, ClimateSeries.constant(temp_c, rh))
    ledgers = {}
    for mode in ("standalone", "integrated"):
        s = LedgerSettings(mode, settings.sizing, settings.integrated, settings.standalone, settings.surface,
                           settings.strict, settings.fixed_capacity_t_per_yr)
        state = StateNode("synthetic", 1.0, 0.0, 0.0, (county,))
        ledgers[mode] = county_ledger(state, county, q_tot_by_month, s)
    rows = []
    for cef in cef_values:
        phis = {mode: removal_ratio(net_removal(ledger, cef), cef, 1.0, 1.0, pue, e_ser)
                for mode, ledger in ledgers.items()}
        rows.append(SensitivityRow(temp_c, cef, phis["standalone"], phis["integrated"]))
    return rows
