"""Input loading and validation.

Every input file is parsed and checked before any computation starts; errors
carry file, row and column so bad data can be fixed at the source.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from aidc_dac.economics import CAPACITY_BASES, CAPEX_ITEMS, CapexItem
from aidc_dac.errors import ValidationError
from aidc_dac.fleet import DEFAULT_RECOVERY_FACTORS, HOURS_MODES, ServerClassSpec
from aidc_dac.regions import ClimateSeries, CountyNode, RegionTree, StateNode, normalize_shares, reconcile_shares
from aidc_dac.thermo import (EXCHANGER_EFFICIENCY, INTEGRATED_COP, STANDALONE_COP, DacResponseSurface,
                             HeatSupplySpec, default_surface)
from aidc_dac.units import MONTHS

log = logging.getLogger(__name__)

SIZING_POLICIES = ("equal-heat", "equal-electricity", "fixed-capacity")
OPEX_HEAT_LOSS = ("single", "squared")

SERVERS_COLUMNS = ["class_id", "gpu_count", "unit_count", "load", "month", "rated_power_kw", "duty_hours", "rho"]
STATES_COLUMNS = ["state_id", "alpha", "cef_kg_per_mwh", "price_usd_per_mwh"]
COUNTIES_COLUMNS = ["state_id", "county_id", "gamma"]
CLIMATE_COLUMNS = ["county_id", "month", "temp_c", "rh"]
CAPACITIES_COLUMNS = ["state_id", "county_id", "capacity_mw"]
CAPEX_COLUMNS = ["item_id", "unit_cost", "capacity_basis", "lifetime_yr", "replacement_yr"]

REQUIRED_INPUTS = ("servers", "states", "counties", "climate")
OPTIONAL_INPUTS = ("dac_response", "capex", "capacities")

# Assumed values used when a scenario omits them; all are echoed into provenance.
DEFAULTS = {
    "pue": 1.2,
    "discount_rate": 0.08,
    "sizing": "equal-heat",
    "opex_heat_loss": "single",
    "hours_mode": "per_unit",
    "integrated_cop": INTEGRATED_COP,
    "integrated_eta": EXCHANGER_EFFICIENCY,
    "standalone_cop": STANDALONE_COP,
    "sensitivity_rh": 0.5,
    "sensitivity_temps": [15.0, 25.0, 35.0],
    "sensitivity_cef": [100.0, 150.0, 200.0, 250.0, 300.0, 350.0, 400.0, 450.0, 500.0, 550.0],
}


# ---------------------------------------------------------------- CSV tables

@dataclass
class Record:
    file: str
    row: int
    values: dict[str, str]

    def _raw(self, column: str) -> str:
        return (self.values.get(column) or "").strip()

    def _fail(self, column: str, reason: str) -> ValidationError:
        return ValidationError(reason, file=self.file, row=self.row, column=column)

    def str(self, column: str) -> str:
        raw = self._raw(column)
        if not raw:
            raise self._fail(column, "missing value")
        return raw

    def float(self, column: str, default: float | None = None) -> float:
        raw = self._raw(column)
        if not raw:
            if default is not None:
                return default
            raise self._fail(column, "missing value")
        try:
            value = float(raw)
        except ValueError:
            raise self._fail(column, f"not a number: {raw!r}") from None
        if not math.isfinite(value):
            raise self._fail(column, f"non-finite value {raw!r}")
        return value

    def optional_float(self, column: str) -> float | None:
        return self.float(column) if self._raw(column) else None

    def int(self, column: str) -> int:
        value = self.float(column)
        if value != int(value):
            raise self._fail(column, f"expected an integer, got {self._raw(column)!r}")
        return int(value)


@dataclass
class Table:
    path: str
    columns: list[str]
    records: list[Record]


def read_table(path: str | Path, required: Sequence[str], optional: Sequence[str] = (),
               strict: bool = False, warnings: list[str] | None = None) -> Table:
    path = Path(path)
    if not path.is_file():
        raise ValidationError("file not found", file=str(path))
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.DictReader(fh)
        header = [h.strip() for h in (reader.fieldnames or [])]
        if not header:
            raise ValidationError("empty file or missing header", file=str(path), row=1)
        reader.fieldnames = header
        if len(set(header)) != len(header):
            raise ValidationError("duplicate column names in header", file=str(path), row=1)
        missing = [c for c in required if c not in header]
        if missing:
            raise ValidationError(f"missing required column(s) {missing}", file=str(path), row=1,
                                  column=missing[0])
        unknown = [c for c in header if c not in required and c not in optional]
        if unknown:
            msg = f"unknown column(s) {unknown}"
            if strict:
                raise ValidationError(msg, file=str(path), row=1, column=unknown[0])
            log.warning("%s: %s ignored", path, msg)
            if warnings is not None:
                warnings.append(f"{path}: {msg} ignored")
        records = []
        for n, row in enumerate(reader, start=2):
            if None in row:
                raise ValidationError("more fields than header columns", file=str(path), row=n)
            if not any((v or "").strip() for v in row.values()):
                continue
            records.append(Record(str(path), n, row))
    return Table(str(path), header, records)


def file_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def packaged_path(name: str) -> Path:
    return Path(str(resources.files("aidc_dac") / "data" / name))


def scenario_dir(name: str) -> Path:
    """Directory of a packaged example scenario (``demo_2024``, ``demo_2030``, ``sensitivity``)."""
    path = packaged_path("scenarios") / name
    if not path.is_dir():
        raise FileNotFoundError(f"no packaged scenario {name!r}")
    return path


# ---------------------------------------------------------------- scenario file

@dataclass
class ScenarioConfig:
    name: str
    year: str
    mode: str
    sizing: str
    pue: float
    discount_rate: float
    opex_heat_loss: str
    hours_mode: str
    strict: bool
    inputs: dict[str, Path]
    integrated: HeatSupplySpec
    standalone: HeatSupplySpec
    fixed_capacity_t_per_yr: float | None = None
    sensitivity_rh: float = DEFAULTS["sensitivity_rh"]
    sensitivity_temps: list[float] = field(default_factory=lambda: list(DEFAULTS["sensitivity_temps"]))
    sensitivity_cef: list[float] = field(default_factory=lambda: list(DEFAULTS["sensitivity_cef"]))
    source: str = ""
    warnings: list[str] = field(default_factory=list)

    @property
    def heat_supply(self) -> HeatSupplySpec:
        return self.integrated if self.mode == "integrated" else self.standalone

    def validate(self) -> None:
        where = self.source or "scenario"
        if self.mode not in ("integrated", "standalone"):
            raise ValidationError(f"mode must be 'integrated' or 'standalone', got {self.mode!r}", file=where)
        if self.sizing not in SIZING_POLICIES:
            raise ValidationError(f"sizing must be one of {SIZING_POLICIES}, got {self.sizing!r}", file=where)
        if self.sizing == "fixed-capacity" and (self.fixed_capacity_t_per_yr is None
                                                or self.fixed_capacity_t_per_yr < 0):
            raise ValidationError("sizing 'fixed-capacity' needs fixed_capacity_t_per_yr >= 0", file=where)
        if not (math.isfinite(self.pue) and self.pue >= 1.0):
            raise ValidationError(f"pue={self.pue} must be >= 1", file=where)
        if not (math.isfinite(self.discount_rate) and self.discount_rate >= 0):
            raise ValidationError(f"discount_rate={self.discount_rate} must be >= 0", file=where)
        if self.opex_heat_loss not in OPEX_HEAT_LOSS:
            raise ValidationError(f"opex_heat_loss must be one of {OPEX_HEAT_LOSS}", file=where)
        if self.hours_mode not in HOURS_MODES:
            raise ValidationError(f"hours_mode must be one of {HOURS_MODES}", file=where)
        if not 0.0 <= self.sensitivity_rh <= 1.0:
            raise ValidationError(f"sensitivity rh={self.sensitivity_rh} outside [0, 1]", file=where)
        if self.integrated.mode != "integrated" or self.standalone.mode != "standalone":
            raise ValidationError("heat supply specs carry the wrong mode", file=where)
        for spec in (self.integrated, self.standalone):
            try:
                spec.validate()
            except ValidationError as exc:
                raise ValidationError(exc.reason, file=where) from None
        for key in REQUIRED_INPUTS:
            if key not in self.inputs:
                raise ValidationError(f"[inputs] is missing '{key}'", file=where)
        for key, path in self.inputs.items():
            if not Path(path).is_file():
                raise ValidationError(f"input '{key}' not found: {path}", file=where)

    def assumptions(self) -> dict[str, Any]:
        """Every constant that shapes results, for the provenance block."""
        out = {
            "mode": self.mode,
            "sizing": self.sizing,
            "pue": self.pue,
            "discount_rate": self.discount_rate,
            "opex_heat_loss": self.opex_heat_loss,
            "hours_mode": self.hours_mode,
            "strict": self.strict,
            "integrated": _spec_dict(self.integrated),
            "standalone": _spec_dict(self.standalone),
            "sensitivity": {"rh": self.sensitivity_rh, "temps_c": self.sensitivity_temps,
                            "cef_kg_per_mwh": self.sensitivity_cef},
            "dac_response": "packaged default (calibrated placeholder)"
            if self.inputs.get("dac_response") == packaged_path("dac_response.csv") else "user supplied",
            "capex": "packaged default (placeholder)"
            if self.inputs.get("capex") == packaged_path("capex.csv") else "user supplied",
        }
        if self.sizing == "fixed-capacity":
            out["fixed_capacity_t_per_yr"] = self.fixed_capacity_t_per_yr
        return out


def _spec_dict(spec: HeatSupplySpec) -> dict[str, Any]:
    d = asdict(spec)
    d["cop_table"] = [list(p) for p in spec.cop_table]
    return d


_TOP_KEYS = {"name", "year", "mode", "sizing", "pue", "discount_rate", "opex_heat_loss", "hours_mode",
             "strict", "fixed_capacity_t_per_yr", "inputs", "integrated", "standalone", "sensitivity"}
_SPEC_KEYS = {"cop", "eta", "source_temp_c", "sink_temp_c", "cop_model", "cop_table"}
_SENS_KEYS = {"rh", "temps_c", "cef_kg_per_mwh"}


def _unknown_keys(table: dict, allowed: set[str], where: str, strict: bool, warnings: list[str]) -> None:
    extra = sorted(set(table) - allowed)
    if not extra:
        return
    msg = f"unknown key(s) {extra} in {where}"
    if strict:
        raise ValidationError(msg)
    log.warning(msg)
    warnings.append(msg)


def _heat_spec(table: dict, mode: str, where: str, strict: bool, warnings: list[str]) -> HeatSupplySpec:
    _unknown_keys(table, _SPEC_KEYS, where, strict, warnings)
    if mode == "integrated":
        defaults = dict(cop=DEFAULTS["integrated_cop"], eta=DEFAULTS["integrated_eta"],
                        source_temp_c=60.0, sink_temp_c=100.0)
    else:
        defaults = dict(cop=DEFAULTS["standalone_cop"], eta=1.0, source_temp_c=15.0, sink_temp_c=100.0)
    try:
        return HeatSupplySpec(
            mode=mode,
            cop=float(table.get("cop", defaults["cop"])),
            eta=float(table.get("eta", defaults["eta"])),
            source_temp_c=float(table.get("source_temp_c", defaults["source_temp_c"])),
            sink_temp_c=float(table.get("sink_temp_c", defaults["sink_temp_c"])),
            cop_model=str(table.get("cop_model", "constant")),
            cop_table=tuple(tuple(p) for p in table.get("cop_table", ())),
        )
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bad value in {where}: {exc}") from None


def load_scenario(path: str | Path, strict: bool | None = None) -> ScenarioConfig:
    """Parse a scenario TOML file. Relative input paths resolve against its directory.

    ``strict`` overrides the file's own ``strict`` key when given.
    """
    path = Path(path)
    if not path.is_file():
        raise ValidationError("scenario file not found", file=str(path))
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"invalid TOML: {exc}", file=str(path)) from None
    warnings: list[str] = []
    strict = bool(data.get("strict", False)) if strict is None else strict
    try:
        _unknown_keys(data, _TOP_KEYS, "scenario", strict, warnings)
        base = path.parent
        raw_inputs = data.get("inputs", {})
        _unknown_keys(raw_inputs, set(REQUIRED_INPUTS + OPTIONAL_INPUTS), "[inputs]", strict, warnings)
        inputs = {key: (base / value).resolve() for key, value in raw_inputs.items()}
        inputs.setdefault("dac_response", packaged_path("dac_response.csv"))
        inputs.setdefault("capex", packaged_path("capex.csv"))
        sens = data.get("sensitivity", {})
        _unknown_keys(sens, _SENS_KEYS, "[sensitivity]", strict, warnings)
        fixed = data.get("fixed_capacity_t_per_yr")
        config = ScenarioConfig(
            name=str(data.get("name", path.stem)),
            year=str(data.get("year", "")),
            mode=str(data.get("mode", "integrated")),
            sizing=str(data.get("sizing", DEFAULTS["sizing"])),
            pue=float(data.get("pue", DEFAULTS["pue"])),
            discount_rate=float(data.get("discount_rate", DEFAULTS["discount_rate"])),
            opex_heat_loss=str(data.get("opex_heat_loss", DEFAULTS["opex_heat_loss"])),
            hours_mode=str(data.get("hours_mode", DEFAULTS["hours_mode"])),
            strict=strict,
            inputs=inputs,
            integrated=_heat_spec(data.get("integrated", {}), "integrated", "[integrated]", strict, warnings),
            standalone=_heat_spec(data.get("standalone", {}), "standalone", "[standalone]", strict, warnings),
            fixed_capacity_t_per_yr=None if fixed is None else float(fixed),
            sensitivity_rh=float(sens.get("rh", DEFAULTS["sensitivity_rh"])),
            sensitivity_temps=[float(t) for t in sens.get("temps_c", DEFAULTS["sensitivity_temps"])],
            sensitivity_cef=[float(c) for c in sens.get("cef_kg_per_mwh", DEFAULTS["sensitivity_cef"])],
            source=str(path),
            warnings=warnings,
        )
    except ValidationError as exc:
        if exc.file is None:
            raise ValidationError(exc.reason, file=str(path)) from None
        raise
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bad scenario value: {exc}", file=str(path)) from None
    config.validate()
    return config


# ---------------------------------------------------------------- input files

@dataclass
class ModelInputs:
    config: ScenarioConfig
    fleet: list[ServerClassSpec]
    tree: RegionTree
    surface: DacResponseSurface
    capex: list[CapexItem]
    digests: dict[str, str]
    warnings: list[str]

    def config_hash(self) -> str:
        payload = {
            "name": self.config.name,
            "year": self.config.year,
            "assumptions": self.config.assumptions(),
            "inputs": self.digests,
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()


def load_servers(path: str | Path, hours_mode: str = "per_unit", strict: bool = False,
                 warnings: list[str] | None = None) -> list[ServerClassSpec]:
    table = read_table(path, SERVERS_COLUMNS[:-1], ["rho"], strict, warnings)
    groups: dict[tuple, dict[str, Any]] = {}
    for rec in table.records:
        class_id = rec.str("class_id")
        if class_id not in DEFAULT_RECOVERY_FACTORS:
            raise rec._fail("class_id", f"unknown server class {class_id!r}")
        gpu_count = rec.int("gpu_count")
        unit_count = rec.int("unit_count")
        if gpu_count < 0:
            raise rec._fail("gpu_count", "must be >= 0")
        if unit_count < 0:
            raise rec._fail("unit_count", "must be >= 0")
        rho = rec.float("rho", DEFAULT_RECOVERY_FACTORS[class_id])
        if not 0.0 <= rho <= 1.0:
            raise rec._fail("rho", f"recovery factor {rho} outside [0, 1]")
        load = rec.str("load")
        if load not in ("train", "inference", "idle"):
            raise rec._fail("load", f"unknown load {load!r}")
        month = rec.int("month")
        if month not in MONTHS:
            raise rec._fail("month", f"month {month} outside 1..12")
        power = rec.float("rated_power_kw")
        if power < 0:
            raise rec._fail("rated_power_kw", f"negative rated power {power}")
        hours = rec.float("duty_hours")
        if hours < 0:
            raise rec._fail("duty_hours", f"negative duty hours {hours}")
        key = (class_id, gpu_count, unit_count, rho)
        g = groups.setdefault(key, {"power": {}, "hours": {}, "first_row": rec.row})
        if load in g["power"] and g["power"][load] != power:
            raise rec._fail("rated_power_kw",
                            f"rated power {power} kW for {class_id}/{load} conflicts with {g['power'][load]} kW")
        g["power"][load] = power
        if (load, month) in g["hours"]:
            raise rec._fail("month", f"duplicate ({class_id}, {load}, month {month}) record")
        g["hours"][(load, month)] = hours
    fleet = []
    for (class_id, gpu_count, unit_count, rho), g in groups.items():
        spec = ServerClassSpec(class_id, gpu_count, g["power"], g["hours"], rho, unit_count,
                               label=f"{class_id} x{unit_count} (first row {g['first_row']})")
        try:
            spec.validate(hours_mode)
        except ValidationError as exc:
            raise ValidationError(exc.reason, file=table.path, row=g["first_row"]) from None
        fleet.append(spec)
    if not fleet:
        raise ValidationError("no server records", file=table.path)
    return fleet


def load_region_tree(states_path: str | Path, counties_path: str | Path, climate_path: str | Path,
                     capacities_path: str | Path | None = None, strict: bool = False,
                     warnings: list[str] | None = None) -> RegionTree:
    warnings = [] if warnings is None else warnings
    states_t = read_table(states_path, STATES_COLUMNS, (), strict, warnings)
    counties_t = read_table(counties_path, COUNTIES_COLUMNS[:2], ["gamma"], strict, warnings)
    climate_t = read_table(climate_path, CLIMATE_COLUMNS, (), strict, warnings)

    states: dict[str, dict[str, Any]] = {}
    for rec in states_t.records:
        sid = rec.str("state_id")
        if sid in states:
            raise rec._fail("state_id", f"duplicate state {sid!r}")
        values = {}
        for col in ("alpha", "cef_kg_per_mwh", "price_usd_per_mwh"):
            values[col] = rec.float(col)
            if values[col] < 0:
                raise rec._fail(col, f"must be >= 0, got {values[col]}")
        states[sid] = dict(values, counties={}, row=rec.row)
    alphas = reconcile_shares({sid: s["alpha"] for sid, s in states.items()},
                              f"{states_t.path}: alpha shares", warnings)

    climate: dict[str, dict[int, tuple[float, float, int]]] = {}
    for rec in climate_t.records:
        cid = rec.str("county_id")
        month = rec.int("month")
        if month not in MONTHS:
            raise rec._fail("month", f"month {month} outside 1..12")
        temp = rec.float("temp_c")
        if not -60.0 <= temp <= 60.0:
            raise rec._fail("temp_c", f"temperature {temp} C outside [-60, 60]")
        rh = rec.float("rh")
        if not 0.0 <= rh <= 1.0:
            raise rec._fail("rh", f"relative humidity {rh} outside [0, 1]")
        per = climate.setdefault(cid, {})
        if month in per:
            raise rec._fail("month", f"duplicate climate month {month} for county {cid!r}")
        per[month] = (temp, rh, rec.row)

    capacities: dict[str, dict[str, float]] | None = None
    if capacities_path is not None:
        cap_t = read_table(capacities_path, CAPACITIES_COLUMNS, (), strict, warnings)
        capacities = {}
        for rec in cap_t.records:
            value = rec.float("capacity_mw")
            if value < 0:
                raise rec._fail("capacity_mw", "must be >= 0")
            capacities.setdefault(rec.str("state_id"), {})[rec.str("county_id")] = value

    county_rows: dict[str, int] = {}
    for rec in counties_t.records:
        sid, cid = rec.str("state_id"), rec.str("county_id")
        if sid not in states:
            raise rec._fail("state_id", f"county {cid!r} references unknown state {sid!r}")
        if cid in county_rows:
            raise rec._fail("county_id", f"duplicate county {cid!r}")
        county_rows[cid] = rec.row
        if capacities is None:
            gamma = rec.float("gamma")
            if gamma < 0:
                raise rec._fail("gamma", f"must be >= 0, got {gamma}")
        else:
            gamma = math.nan
        states[sid]["counties"][cid] = gamma

    unused = sorted(set(climate) - set(county_rows))
    if unused:
        raise ValidationError(f"climate rows for unknown county {unused[0]!r}", file=climate_t.path,
                              row=min(r for _, _, r in climate[unused[0]].values()), column="county_id")

    nodes = []
    for sid, s in states.items():
        county_ids = list(s["counties"])
        if capacities is not None and county_ids:
            caps = capacities.get(sid, {})
            missing = [c for c in county_ids if c not in caps]
            if missing:
                raise ValidationError(f"no capacity for county {missing[0]!r}", file=str(capacities_path))
            gammas = normalize_shares({c: caps[c] for c in county_ids})
        else:
            gammas = s["counties"]
        if county_ids:
            gammas = reconcile_shares(gammas, f"{counties_t.path}: gamma shares of state {sid}", warnings)
        counties = []
        for cid in county_ids:
            months = climate.get(cid, {})
            missing = [m for m in MONTHS if m not in months]
            if missing:
                raise ValidationError(f"county {cid!r} lacks climate for month(s) {missing}",
                                      file=climate_t.path, column="month")
            series = ClimateSeries([months[m][0] for m in MONTHS], [months[m][1] for m in MONTHS])
            counties.append(CountyNode(cid, gammas[cid], series))
        nodes.append(StateNode(sid, alphas[sid], s["cef_kg_per_mwh"], s["price_usd_per_mwh"], tuple(counties)))
    tree = RegionTree(tuple(nodes), warnings=tuple(warnings))
    tree.validate()
    return tree


def load_capex(path: str | Path, strict: bool = False, warnings: list[str] | None = None) -> list[CapexItem]:
    table = read_table(path, CAPEX_COLUMNS[:-1], ["replacement_yr"], strict, warnings)
    items, seen = [], set()
    for rec in table.records:
        item_id = rec.str("item_id")
        if item_id not in CAPEX_ITEMS:
            raise rec._fail("item_id", f"unknown item {item_id!r}; expected one of {CAPEX_ITEMS}")
        if item_id in seen:
            raise rec._fail("item_id", f"duplicate item {item_id!r}")
        seen.add(item_id)
        basis = rec.str("capacity_basis")
        if basis not in CAPACITY_BASES:
            raise rec._fail("capacity_basis", f"unknown basis {basis!r}; expected one of {CAPACITY_BASES}")
        unit_cost = rec.float("unit_cost")
        if unit_cost < 0:
            raise rec._fail("unit_cost", "must be >= 0")
        lifetime = rec.float("lifetime_yr")
        if lifetime <= 0:
            raise rec._fail("lifetime_yr", "must be > 0")
        replacement = rec.optional_float("replacement_yr")
        if replacement is not None and replacement <= 0:
            raise rec._fail("replacement_yr", "must be > 0")
        items.append(CapexItem(item_id, unit_cost, basis, lifetime, replacement))
    return items


def load_and_validate(config: ScenarioConfig) -> ModelInputs:
    """Read and check every input of a scenario. Nothing is computed on failure."""
    config.validate()
    warnings = list(config.warnings)
    strict = config.strict
    paths = config.inputs
    fleet = load_servers(paths["servers"], config.hours_mode, strict, warnings)
    tree = load_region_tree(paths["states"], paths["counties"], paths["climate"], paths.get("capacities"),
                            strict, warnings)
    surface = DacResponseSurface.from_csv(paths["dac_response"]) if "dac_response" in paths else default_surface()
    capex = load_capex(paths["capex"], strict, warnings)
    for state, county in tree.counties():
        for month in MONTHS:
            temp, rh = county.climate.at(month)
            if not surface.in_range(temp, rh):
                msg = (f"county {county.county_id} month {month}: climate T={temp}, RH={rh} "
                       f"outside the response grid")
                if strict:
                    raise ValidationError(msg, file=str(paths["climate"]))
                warnings.append(msg + "; will be clamped")
    digests = {key: file_digest(p) for key, p in sorted(paths.items())}
    digests["scenario"] = file_digest(config.source) if config.source else ""
    return ModelInputs(config, fleet, tree, surface, capex, digests, warnings)
