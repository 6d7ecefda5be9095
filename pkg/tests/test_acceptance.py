"""Acceptance criteria 1-7, one test each.

Every test records a one-line PASS/FAIL verdict; the lines are printed at the
end of the pytest run (see conftest.py) and when this file is run directly.
"""

from __future__ import annotations

import contextlib
import csv
import math
import time

import pytest
from click.testing import CliRunner
from hypothesis import HealthCheck, given, settings, strategies as st

from aidc_dac.accounting import LedgerSettings, build_ledger, net_removal, removal_ratio, summarize_counties
from aidc_dac.cli import main
from aidc_dac.economics import crf, state_opex
from aidc_dac.fleet import DEFAULT_RECOVERY_FACTORS, ServerClassSpec, compute_fleet_energy
from aidc_dac.io import load_and_validate, load_scenario, packaged_path, scenario_dir
from aidc_dac.pipeline import compare_scenarios, run_inputs
from aidc_dac.regions import ClimateSeries, CountyNode, RegionTree, StateNode, allocate_to_counties, allocate_to_states
from aidc_dac.thermo import heat_pump_electricity
from aidc_dac.units import MONTHS
from helpers import INTEGRATED, STANDALONE, make_inputs, write_scenario
from oracle import brute_force

VERDICTS: dict[int, str] = {}


@contextlib.contextmanager
def criterion(number: int, title: str):
    notes: list[str] = []
    try:
        yield notes
    except BaseException as exc:
        VERDICTS[number] = f"criterion {number} FAIL  {title}: {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}"
        raise
    VERDICTS[number] = f"criterion {number} PASS  {title}" + (f" ({'; '.join(notes)})" if notes else "")


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# ---------------------------------------------------------------- 1

def test_criterion_1_sensitivity_curve(tmp_path):
    with criterion(1, "CEF sensitivity endpoints and constant uplift") as notes:
        scenario = scenario_dir("sensitivity") / "scenario.toml"
        start = time.perf_counter()
        res = CliRunner().invoke(main, ["sensitivity", "--scenario", str(scenario), "--cef", "100:550:50",
                                        "--temps", "15", "--out", str(tmp_path)])
        elapsed = time.perf_counter() - start
        assert res.exit_code == 0, res.output
        rows = _read_csv(tmp_path / "sensitivity.csv")
        cefs = [float(r["cef_kg_per_mwh"]) for r in rows]
        assert cefs == [100.0 + 50 * i for i in range(10)]
        base = [float(r["phi_baseline"]) for r in rows]
        integ = [float(r["phi_integrated"]) for r in rows]
        assert abs(base[0] - 2.24) <= 0.01, f"baseline at 100: {base[0]}"
        assert abs(base[-1] - (-0.01)) <= 0.01, f"baseline at 550: {base[-1]}"
        assert abs(integ[0] - 2.41) <= 0.01, f"integrated at 100: {integ[0]}"
        assert abs(integ[-1] - 0.16) <= 0.01, f"integrated at 550: {integ[-1]}"
        for r in rows:
            assert abs(float(r["uplift"]) - 0.17) <= 0.005, f"uplift {r['uplift']} at {r['cef_kg_per_mwh']}"
        assert elapsed < 1.0, f"runtime {elapsed:.3f} s"
        notes.append(f"baseline {base[0]:.3f} -> {base[-1]:.3f}, integrated {integ[0]:.3f} -> {integ[-1]:.3f}, "
                     f"{elapsed:.3f} s")


# ---------------------------------------------------------------- 2

def test_criterion_2_heat_pump_arithmetic():
    with criterion(2, "heat-pump electricity per MWh of regeneration heat") as notes:
        e_int = heat_pump_electricity(1.0, INTEGRATED)
        assert 0.28 <= e_int <= 0.30, e_int
        assert round(e_int, 4) == 0.2849, e_int
        e_sa = heat_pump_electricity(1.0, STANDALONE)
        assert e_sa == 0.5, e_sa
        notes.append(f"COP 3.51 -> {e_int:.4f}, COP 2 -> {e_sa}")


# ---------------------------------------------------------------- 3

LEDGER_MAP = {"q_lo": "q_lo", "q_hi": "q_hi", "q_th": "q_th", "e_elec": "e_elec", "m_tot": "m_tot", "e_hp": "e_hp",
              "e_dac": "e_dac", "e_tot": "e_tot", "emissions": "emissions", "m_net_contrib": "m_net_contrib"}
SUMMARY_MAP = {"m_tot_annual": "m_tot_annual", "m_net_annual": "m_net_annual",
               "aidc_indirect_emissions": "aidc_indirect_emissions", "removal_ratio": "removal_ratio"}


def _close(a, b):
    return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-12)


def test_criterion_3_oracle_equivalence(two_by_two):
    with criterion(3, "pipeline equals brute-force oracle on 2x2x12 fixture") as notes:
        checked = 0
        worst = 0.0
        for mode, path in two_by_two.items():
            start = time.perf_counter()
            result = run_inputs(load_and_validate(load_scenario(path)))
            elapsed = time.perf_counter() - start
            assert elapsed < 1.0, f"{mode} runtime {elapsed:.3f} s"
            e_ser, ledger, summary = brute_force(path.parent, packaged_path("dac_response.csv"), mode=mode,
                                                 cop_int=3.51, eta=0.9, cop_sa=2.0, pue=1.25)
            assert _close(result.fleet.annual_server_electricity, e_ser)
            assert len(result.ledger) == len(ledger) == 48
            for entry in result.ledger:
                expected = ledger[(entry.county_id, entry.month)]
                for ours, theirs in LEDGER_MAP.items():
                    got, want = getattr(entry, ours), expected[theirs]
                    assert _close(got, want), f"{mode} {entry.county_id} m{entry.month} {ours}: {got} vs {want}"
                    if want:
                        worst = max(worst, abs(got - want) / abs(want))
                    checked += 1
            for s in result.summaries:
                expected = summary[s.county_id]
                for ours, theirs in SUMMARY_MAP.items():
                    got, want = getattr(s, ours), expected[theirs]
                    assert _close(got, want), f"{mode} {s.county_id} {ours}: {got} vs {want}"
                    checked += 1
        notes.append(f"{checked} values, max rel diff {worst:.1e}")


# ---------------------------------------------------------------- shared random fixtures

@st.composite
def fleets(draw):
    out = []
    for cls in draw(st.lists(st.sampled_from(sorted(DEFAULT_RECOVERY_FACTORS)), min_size=1, max_size=4)):
        loads = {"train": draw(st.floats(0.5, 12.0)), "inference": draw(st.floats(0.3, 8.0)),
                 "idle": draw(st.floats(0.05, 2.0))}
        duty = {(load, m): draw(st.floats(0.0, 220.0)) for load in loads for m in MONTHS}
        duty[("train", 1)] = draw(st.floats(1.0, 220.0))
        rho = draw(st.one_of(st.just(DEFAULT_RECOVERY_FACTORS[cls]), st.floats(0.05, 1.0)))
        out.append(ServerClassSpec(cls, 4, loads, duty, rho, draw(st.integers(1, 400))))
    return out


@st.composite
def share_vector(draw, n):
    raw = draw(st.lists(st.floats(0.01, 100.0), min_size=n, max_size=n))
    total = math.fsum(raw)
    shares = [x / total for x in raw]
    shares[-1] = 1.0 - math.fsum(shares[:-1])
    return shares


@st.composite
def trees(draw):
    n_states = draw(st.integers(1, 4))
    alphas = draw(share_vector(n_states))
    states = []
    for i, alpha in enumerate(alphas):
        n_counties = draw(st.integers(1, 4))
        gammas = draw(share_vector(n_counties))
        counties = []
        for j, gamma in enumerate(gammas):
            temps = tuple(draw(st.floats(-10.0, 35.0)) for _ in MONTHS)
            rhs = tuple(draw(st.floats(0.1, 0.9)) for _ in MONTHS)
            counties.append(CountyNode(f"C{i}{j}", gamma, ClimateSeries(temps, rhs)))
        states.append(StateNode(f"S{i}", alpha, draw(st.floats(1.0, 900.0)), draw(st.floats(5.0, 250.0)),
                                tuple(counties)))
    return RegionTree(tuple(states))


SETTINGS = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])


# ---------------------------------------------------------------- 4

_c4 = {"examples": 0}


@SETTINGS
@given(fleets(), trees())
def _conservation(fleet, tree):
    _c4["examples"] += 1
    energy = compute_fleet_energy(fleet)
    for m in MONTHS:
        q_tot = energy.monthly_waste_heat[m]
        counties_total = []
        for state_id, q_state in allocate_to_states(q_tot, tree).items():
            counties_total.extend(allocate_to_counties(q_state, tree.state(state_id)).values())
        assert math.isclose(math.fsum(counties_total), q_tot, rel_tol=1e-9, abs_tol=1e-12)
    result = run_inputs(make_inputs(tree, fleet))
    for m in MONTHS:
        ledger_heat = math.fsum(r.q_lo for r in result.ledger if r.month == m)
        assert math.isclose(ledger_heat, energy.monthly_waste_heat[m], rel_tol=1e-9, abs_tol=1e-12)
    for cost in result.costs:
        assert math.isclose(math.fsum(cost.beta.values()), 1.0, rel_tol=1e-9)
    for state in tree.states:
        rows = [r for r in result.ledger if r.state_id == state.state_id]
        state_net = net_removal(rows, state.cef)
        county_sum = math.fsum(s.m_net_annual for s in result.summaries if s.state_id == state.state_id)
        assert math.isclose(state_net, county_sum, rel_tol=1e-9, abs_tol=1e-9)


def test_criterion_4_conservation():
    with criterion(4, "heat conservation, sum(beta) = 1, county-to-state m_net additivity") as notes:
        _c4["examples"] = 0
        _conservation()
        assert _c4["examples"] >= 1000, f"only {_c4['examples']} examples"
        notes.append(f"{_c4['examples']} random fleets and share trees")


# ---------------------------------------------------------------- 5

_c5 = {"examples": 0}


@SETTINGS
@given(fleets(), trees(), st.sampled_from(["equal-heat", "equal-electricity"]), st.floats(1.0, 2.0),
       st.floats(1.0, 100.0))
def _direction(fleet, tree, sizing, pue, d_price):
    _c5["examples"] += 1
    alone = run_inputs(make_inputs(tree, fleet, "standalone", sizing=sizing, pue=pue))
    integ = run_inputs(make_inputs(tree, fleet, "integrated", sizing=sizing, pue=pue))
    for s_a, s_i in zip(alone.summaries, integ.summaries):
        assert s_i.removal_ratio >= s_a.removal_ratio, (s_a.county_id, s_a.removal_ratio, s_i.removal_ratio)
    e_ser = integ.fleet.annual_server_electricity
    for state, county in tree.counties():
        rows = [r for r in integ.ledger if r.county_id == county.county_id]
        phis = [removal_ratio(net_removal(rows, mu), mu, state.alpha, county.gamma, pue, e_ser)
                for mu in (50.0, 200.0, 450.0, 800.0)]
        assert all(b < a for a, b in zip(phis, phis[1:])), phis
    if sizing == "equal-heat":
        for state in tree.states:
            assert integ.cost(state.state_id).opex <= alone.cost(state.state_id).opex
    pricier = RegionTree(tuple(StateNode(s.state_id, s.alpha, s.cef, s.price + d_price, s.counties)
                               for s in tree.states))
    dearer = run_inputs(make_inputs(pricier, fleet, "integrated", sizing=sizing, pue=pue))
    for state in tree.states:
        assert dearer.cost(state.state_id).lccc > integ.cost(state.state_id).lccc


def test_criterion_5_direction_of_effect():
    with criterion(5, "integrated >= standalone phi, phi decreasing in CEF, OPEX and price monotonicity") as notes:
        _c5["examples"] = 0
        _direction()
        notes.append(f"{_c5['examples']} random fixtures")


# ---------------------------------------------------------------- 6

def test_criterion_6_flip_detection(tmp_path):
    with criterion(6, "standalone-negative / integrated-positive county flagged as flip") as notes:
        servers = [("AI-8GPU", 8, 50, "train", m, 10.2, 500.0, 0.89) for m in MONTHS]
        states = [("HC", 1.0, 500.0, 90.0)]
        counties = [("HC", "Cold-Humid", 1.0)]
        climate = [("Cold-Humid", m, -10.0, 0.9) for m in MONTHS]
        results = {}
        for mode in ("standalone", "integrated"):
            path = write_scenario(tmp_path, servers=servers, states=states, counties=counties, climate=climate,
                                  mode=mode, extra="pue = 1.2")
            results[mode] = run_inputs(load_and_validate(load_scenario(path, strict=True)))
        phi_a = results["standalone"].summary("Cold-Humid").removal_ratio
        phi_b = results["integrated"].summary("Cold-Humid").removal_ratio
        assert phi_a < 0 < phi_b, (phi_a, phi_b)
        report = compare_scenarios(results["standalone"], results["integrated"])
        assert report.flips == ["Cold-Humid"], report.flips
        notes.append(f"phi {phi_a:.3f} -> {phi_b:.3f}")


# ---------------------------------------------------------------- 7

def test_criterion_7_economics():
    with criterion(7, "OPEX example, CRF, Virginia-like LCCC reduction") as notes:
        opex = state_opex(50.0, {1: 1.0}, {1: 0.28}, {1: 10.0 / 3.6}, 0.9, 3.51)
        assert abs(opex - 49.62) <= 0.01, opex
        factor = crf(0.08, 20)
        assert abs(factor - 0.10185) <= 1e-5, factor
        lccc = {}
        for mode in ("standalone", "integrated"):
            result = run_inputs(load_and_validate(load_scenario(scenario_dir("virginia") / f"{mode}.toml")))
            lccc[mode] = result.cost("VA").lccc
        assert abs(lccc["standalone"] - 303.4) <= 0.05, lccc
        reduction = 1.0 - lccc["integrated"] / lccc["standalone"]
        assert 0.19 <= reduction <= 0.27, reduction
        notes.append(f"OPEX {opex:.4f}, CRF {factor:.5f}, LCCC {lccc['standalone']:.1f} -> "
                     f"{lccc['integrated']:.1f} ({reduction:.1%})")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
