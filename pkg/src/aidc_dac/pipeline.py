"""Scenario orchestration: inputs -> ledger -> summaries -> costs -> national totals."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from aidc_dac import __version__
from aidc_dac.accounting import (CaptureLedgerEntry, LedgerSettings, RemovalSummary, SensitivityRow,
                                 build_ledger, sensitivity_curve, state_removal_ratio, summarize_counties)
from aidc_dac.economics import (CAPACITY_BASES, CostSummary, SizingResult, annualized_capex, capacity_demand,
                                lccc, monthly_weights, state_opex, worst_month_sizing)
from aidc_dac.errors import ModelError, ValidationError
from aidc_dac.fleet import FleetEnergyResult, compute_fleet_energy
from aidc_dac.io import ModelInputs, ScenarioConfig, load_and_validate
from aidc_dac.units import MONTHS

log = logging.getLogger(__name__)


@dataclass
class ScenarioResult:
    name: str
    year: str
    mode: str
    summaries: list[RemovalSummary]
    costs: list[CostSummary]
    national: dict[str, Any]
    ledger: list[CaptureLedgerEntry] = field(default_factory=list)
    state_heat: dict[str, float] = field(default_factory=dict)
    state_ratio: dict[str, float | None] = field(default_factory=dict)
    state_ids: list[str] = field(default_factory=list)
    fleet: FleetEnergyResult | None = None
    provenance: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def summary(self, county_id: str) -> RemovalSummary:
        for s in self.summaries:
            if s.county_id == county_id:
                return s
        raise KeyError(county_id)

    def cost(self, state_id: str) -> CostSummary | None:
        for c in self.costs:
            if c.state_id == state_id:
                return c
        return None


def ledger_settings(inputs: ModelInputs) -> LedgerSettings:
    c = inputs.config
    return LedgerSettings(c.mode, c.sizing, c.integrated, c.standalone, inputs.surface, c.strict,
                          c.fixed_capacity_t_per_yr)


def _weighted(rows: Sequence[CaptureLedgerEntry], value) -> float:
    return math.fsum(r.m_tot * value(r) for r in rows) / math.fsum(r.m_tot for r in rows)


def state_costs(state_id: str, price: float, rows: Sequence[CaptureLedgerEntry], config: ScenarioConfig,
                capex_items, warnings: list[str] | None = None) -> CostSummary | None:
    """OPEX, per-item CAPEX and LCCC for one state; None when the state captures nothing.

    Per-tonne monthly demands are capture-weighted over the state's counties.
    Each county plant is sized for its own worst month and capacities add up.
    """
    monthly = {m: math.fsum(r.m_tot for r in rows if r.month == m) for m in MONTHS}
    if not math.fsum(monthly.values()) > 0:
        return None
    beta = monthly_weights(monthly)
    q_th, e_elec, cop = {}, {}, {}
    for m in MONTHS:
        month_rows = [r for r in rows if r.month == m and r.m_tot > 0]
        if not month_rows:
            continue
        q_th[m] = _weighted(month_rows, lambda r: r.q_th)
        e_elec[m] = _weighted(month_rows, lambda r: r.e_elec)
        cop[m] = q_th[m] / _weighted(month_rows, lambda r: r.q_th / r.cop)
    spec = config.heat_supply
    eta = spec.eta if config.mode == "integrated" else 1.0
    opex = state_opex(price, beta, e_elec, q_th, eta, cop, config.opex_heat_loss)

    integ, alone = config.integrated, config.standalone
    if integ.cop_model == alone.cop_model == "constant" and integ.cop > alone.cop:
        opex_int = state_opex(price, beta, e_elec, q_th, integ.eta, integ.cop, config.opex_heat_loss)
        opex_alone = state_opex(price, beta, e_elec, q_th, 1.0, alone.cop)
        if opex_int > opex_alone * (1 + 1e-12):
            msg = f"state {state_id}: integrated OPEX {opex_int} exceeds standalone OPEX {opex_alone}"
            log.warning(msg)
            if warnings is not None:
                warnings.append(msg)

    by_county: dict[str, list[CaptureLedgerEntry]] = {}
    for r in rows:
        by_county.setdefault(r.county_id, []).append(r)
    sizing = {}
    for basis in CAPACITY_BASES:
        parts = []
        for county_rows in by_county.values():
            demand = {r.month: capacity_demand(basis, r.month, r.m_tot, r.q_hi, r.e_dac) for r in county_rows}
            parts.append(worst_month_sizing(demand))
        sizing[basis] = SizingResult.total(parts)
    annual = math.fsum(monthly.values())
    capex = annualized_capex(capex_items, sizing, annual, config.discount_rate)
    return CostSummary(state_id, config.mode, opex, capex, lccc(opex, capex), beta, annual)


def run_inputs(inputs: ModelInputs, threads: int = 1) -> ScenarioResult:
    config = inputs.config
    warnings = list(inputs.warnings)
    fleet = compute_fleet_energy(inputs.fleet, config.hours_mode)
    e_ser = fleet.annual_server_electricity
    settings = ledger_settings(inputs)
    ledger = build_ledger(inputs.tree, fleet.monthly_waste_heat, settings, threads, warnings)
    summaries = summarize_counties(inputs.tree, ledger, config.pue, e_ser)

    q_tot_annual = math.fsum(fleet.monthly_waste_heat.values())
    state_heat = {s.state_id: s.alpha * q_tot_annual for s in inputs.tree.states}
    costs, state_ratio = [], {}
    for state in inputs.tree.states:
        rows = [r for r in ledger if r.state_id == state.state_id]
        try:
            cost = state_costs(state.state_id, state.price, rows, config, inputs.capex, warnings)
        except ModelError as exc:
            raise ModelError(f"state {state.state_id}: {exc}") from None
        if cost is not None:
            costs.append(cost)
        state_ratio[state.state_id] = state_removal_ratio(s for s in summaries if s.state_id == state.state_id)

    gross = math.fsum(r.m_tot for r in ledger)
    net = math.fsum(s.m_net_annual for s in summaries)
    indirect = math.fsum(s.aidc_indirect_emissions for s in summaries)
    national = {
        "scenario": config.name,
        "year": config.year,
        "mode": config.mode,
        "server_electricity_mwh": e_ser,
        "recoverable_heat_mwh": q_tot_annual,
        "monthly_recoverable_heat_mwh": {str(m): fleet.monthly_waste_heat[m] for m in MONTHS},
        "gross_capture_t": gross,
        "gross_capture_kt": gross / 1000.0,
        "net_removal_t": net,
        "net_removal_kt": net / 1000.0,
        "grid_emissions_t": math.fsum(r.emissions for r in ledger),
        "aidc_indirect_emissions_t": indirect,
        "removal_ratio": net / indirect if indirect > 0 else None,
        "counties": len(summaries),
        "negative_ratio_counties": sum(1 for s in summaries if s.removal_ratio is not None and s.removal_ratio < 0),
    }
    provenance = {
        "config_hash": inputs.config_hash(),
        "input_digests": inputs.digests,
        "assumptions": config.assumptions(),
        "version": __version__,
    }
    return ScenarioResult(config.name, config.year, config.mode, summaries, costs, national, ledger, state_heat,
                          state_ratio, [s.state_id for s in inputs.tree.states], fleet, provenance, warnings)


def run_scenario(config: ScenarioConfig, threads: int = 1) -> ScenarioResult:
    """Validate every input, then run the monthly model chain for one scenario."""
    return run_inputs(load_and_validate(config), threads)


def scenario_sensitivity(inputs: ModelInputs, cef_values: Sequence[float] | None = None,
                         temps: Sequence[float] | None = None) -> list[SensitivityRow]:
    config = inputs.config
    fleet = compute_fleet_energy(inputs.fleet, config.hours_mode)
    settings = ledger_settings(inputs)
    cef_values = config.sensitivity_cef if cef_values is None else cef_values
    temps = config.sensitivity_temps if temps is None else temps
    rows = []
    for temp in temps:
        rows.extend(sensitivity_curve(fleet.monthly_waste_heat, fleet.annual_server_electricity, config.pue,
                                      settings, cef_values, temp, config.sensitivity_rh))
    return rows


# ---------------------------------------------------------------- comparison

@dataclass
class DiffReport:
    name_a: str
    name_b: str
    counties: list[dict[str, Any]]
    states: list[dict[str, Any]]

    @property
    def flips(self) -> list[str]:
        return [row["county_id"] for row in self.counties if row["flip"]]

    @property
    def reverse_flips(self) -> list[str]:
        return [row["county_id"] for row in self.counties if row["reverse_flip"]]


def _delta(a: float | None, b: float | None) -> float | None:
    if a is None or b is None:
        return None
    return b - a


def compare_scenarios(a: ScenarioResult, b: ScenarioResult) -> DiffReport:
    """Per-county and per-state changes from ``a`` to ``b``.

    A county flips when its removal ratio goes from negative in ``a`` to
    positive in ``b``; the opposite change is reported as a reverse flip.
    """
    tree_a = [(s.state_id, s.county_id) for s in a.summaries]
    tree_b = [(s.state_id, s.county_id) for s in b.summaries]
    if sorted(tree_a) != sorted(tree_b):
        only_a = sorted(set(tree_a) - set(tree_b))
        only_b = sorted(set(tree_b) - set(tree_a))
        raise ValidationError(f"region trees differ: only in a {only_a[:5]}, only in b {only_b[:5]}")
    by_b = {s.county_id: s for s in b.summaries}
    counties = []
    for sa in a.summaries:
        sb = by_b[sa.county_id]
        pa, pb = sa.removal_ratio, sb.removal_ratio
        counties.append({
            "state_id": sa.state_id,
            "county_id": sa.county_id,
            "phi_a": pa,
            "phi_b": pb,
            "delta_phi": _delta(pa, pb),
            "capture_a_t": sa.m_tot_annual,
            "capture_b_t": sb.m_tot_annual,
            "delta_capture_t": sb.m_tot_annual - sa.m_tot_annual,
            "flip": pa is not None and pb is not None and pa < 0 < pb,
            "reverse_flip": pa is not None and pb is not None and pb < 0 < pa,
        })
    states = []
    state_ids = list(dict.fromkeys(sid for sid, _ in tree_a))
    for sid in a.state_ids or []:
        if sid not in state_ids:
            state_ids.append(sid)
    for sid in state_ids:
        ca, cb = a.cost(sid), b.cost(sid)
        la = ca.lccc if ca else None
        lb = cb.lccc if cb else None
        pa, pb = a.state_ratio.get(sid), b.state_ratio.get(sid)
        states.append({
            "state_id": sid,
            "lccc_a": la,
            "lccc_b": lb,
            "delta_lccc": _delta(la, lb),
            "phi_a": pa,
            "phi_b": pb,
            "delta_phi": _delta(pa, pb),
            "capture_a_t": math.fsum(s.m_tot_annual for s in a.summaries if s.state_id == sid),
            "capture_b_t": math.fsum(s.m_tot_annual for s in b.summaries if s.state_id == sid),
        })
    for row in states:
        row["delta_capture_t"] = row["capture_b_t"] - row["capture_a_t"]
    return DiffReport(a.name, b.name, counties, states)


def state_rankings(result: ScenarioResult) -> list[tuple[str, int, str, float]]:
    """``(metric, rank, state_id, value)`` rows: heat and ratio descending, LCCC ascending."""
    out = []
    metrics: list[tuple[str, Mapping[str, float | None], bool]] = [
        ("waste_heat_mwh", result.state_heat, True),
        ("removal_ratio", result.state_ratio, True),
        ("lccc_usd_per_t", {c.state_id: c.lccc for c in result.costs}, False),
    ]
    for metric, values, descending in metrics:
        ranked = sorted(((sid, v) for sid, v in values.items() if v is not None),
                        key=lambda kv: ((-kv[1] if descending else kv[1]), kv[0]))
        out.extend((metric, i, sid, v) for i, (sid, v) in enumerate(ranked, start=1))
    return out
