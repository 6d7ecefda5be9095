"""Fixture writers and in-memory model builders shared by the tests."""

from __future__ import annotations

import csv
import random
from pathlib import Path

from aidc_dac.economics import CapexItem
from aidc_dac.fleet import ServerClassSpec
from aidc_dac.io import ModelInputs, ScenarioConfig
from aidc_dac.regions import ClimateSeries, CountyNode, RegionTree, StateNode
from aidc_dac.thermo import DacResponseSurface, HeatSupplySpec, default_surface
from aidc_dac.units import DAYS_IN_MONTH, MONTHS

SERVERS_HEADER = ["class_id", "gpu_count", "unit_count", "load", "month", "rated_power_kw", "duty_hours", "rho"]

INTEGRATED = HeatSupplySpec("integrated", 3.51, 0.9, 60.0, 100.0)
STANDALONE = HeatSupplySpec("standalone", 2.0, 1.0, 15.0, 100.0)

DEFAULT_CAPEX = [
    CapexItem("heat_pump", 320000.0, "per_MW_heat", 20),
    CapexItem("dac_module", 330.0, "per_t_per_yr", 20),
    CapexItem("fan", 470.0, "per_t_per_yr", 15),
    CapexItem("absorbent", 80.0, "per_t_per_yr", 20, 3),
    CapexItem("other", 60.0, "per_t_per_yr", 20),
]


def write_csv(path: Path, header, rows) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    return path


def write_scenario(d: Path, *, servers, states, counties, climate, mode="integrated", extra="",
                   surface_rows=None, capex_rows=None, name="test") -> Path:
    """Write a complete scenario directory and return the scenario file path."""
    d.mkdir(parents=True, exist_ok=True)
    write_csv(d / "servers.csv", SERVERS_HEADER, servers)
    write_csv(d / "states.csv", ["state_id", "alpha", "cef_kg_per_mwh", "price_usd_per_mwh"], states)
    write_csv(d / "counties.csv", ["state_id", "county_id", "gamma"], counties)
    write_csv(d / "climate.csv", ["county_id", "month", "temp_c", "rh"], climate)
    inputs = ""
    if surface_rows is not None:
        write_csv(d / "dac_response.csv", ["temp_c", "rh", "q_th_gj_per_t", "e_elec_gj_per_t"], surface_rows)
        inputs += 'dac_response = "dac_response.csv"\n'
    if capex_rows is not None:
        write_csv(d / "capex.csv", ["item_id", "unit_cost", "capacity_basis", "lifetime_yr", "replacement_yr"],
                  capex_rows)
        inputs += 'capex = "capex.csv"\n'
    toml = f'''name = "{name}"
year = "2024"
mode = "{mode}"
{extra}
[inputs]
servers = "servers.csv"
states = "states.csv"
counties = "counties.csv"
climate = "climate.csv"
{inputs}
[integrated]
cop = 3.51
eta = 0.9

[standalone]
cop = 2.0
'''
    path = d / f"{mode}.toml"
    path.write_text(toml, encoding="utf-8")
    return path


def two_by_two_rows(seed: int = 7):
    """Servers/states/counties/climate rows for a 2-state x 2-county fixture."""
    rng = random.Random(seed)
    servers = []
    classes = [("AI-8GPU", 8, 120, 0.89, {"train": 10.2, "inference": 7.4, "idle": 1.9}),
               ("AI-4GPU", 4, 300, 0.78, {"train": 5.3, "inference": 3.9, "idle": 1.0}),
               ("AI-NonAccel", 0, 800, 0.46, {"train": 0.9, "inference": 0.6, "idle": 0.25})]
    for cls, gpus, n, rho, power in classes:
        for m in MONTHS:
            hours = 24.0 * DAYS_IN_MONTH[m - 1]
            train = round(rng.uniform(0.2, 0.5) * hours, 2)
            infer = round(rng.uniform(0.2, 0.4) * hours, 2)
            idle = round(hours - train - infer - rng.uniform(0, 20), 2)
            for load, h in (("train", train), ("inference", infer), ("idle", idle)):
                servers.append((cls, gpus, n, load, m, power[load], h, rho))
    states = [("S1", 0.62, 380.0, 85.0), ("S2", 0.38, 210.0, 140.0)]
    counties = [("S1", "C11", 0.7), ("S1", "C12", 0.3), ("S2", "C21", 0.45), ("S2", "C22", 0.55)]
    climate = []
    for cid, (t0, rh0) in {"C11": (12.0, 0.7), "C12": (3.0, 0.8), "C21": (24.0, 0.3), "C22": (17.0, 0.5)}.items():
        for m in MONTHS:
            climate.append((cid, m, round(t0 + rng.uniform(-8, 8), 2), round(min(0.9, max(0.1, rh0 + rng.uniform(-0.15, 0.15))), 3)))
    return servers, states, counties, climate


# ---------------------------------------------------------------- in-memory builders

def simple_fleet(power_kw=10.0, hours=600.0, rho=0.89, units=1, cls="AI-8GPU") -> list[ServerClassSpec]:
    return [ServerClassSpec(cls, 8, {"train": power_kw}, {("train", m): hours for m in MONTHS}, rho, units)]


def make_config(mode="integrated", sizing="equal-heat", pue=1.2, integrated=INTEGRATED, standalone=STANDALONE,
                **kw) -> ScenarioConfig:
    return ScenarioConfig(name=kw.pop("name", f"mem-{mode}"), year=kw.pop("year", "2024"), mode=mode,
                          sizing=sizing, pue=pue, discount_rate=kw.pop("discount_rate", 0.08),
                          opex_heat_loss=kw.pop("opex_heat_loss", "single"), hours_mode="per_unit",
                          strict=False, inputs={}, integrated=integrated, standalone=standalone, **kw)


def make_inputs(tree: RegionTree, fleet=None, mode="integrated", surface: DacResponseSurface | None = None,
                capex=None, **config_kw) -> ModelInputs:
    return ModelInputs(make_config(mode, **config_kw), fleet or simple_fleet(), tree,
                       surface or default_surface(), capex or DEFAULT_CAPEX, {}, [])


def single_county_tree(cef=400.0, price=80.0, temp=15.0, rh=0.5) -> RegionTree:
    county = CountyNode("C1", 1.0, ClimateSeries.constant(temp, rh))
    return RegionTree((StateNode("S1", 1.0, cef, price, (county,)),))
