"""Result tables on disk.

All CSV files are UTF-8, RFC 4180 (CRLF line ends, minimal quoting) with a
fixed column order; floats are written with ``repr`` so they round-trip
exactly and repeated runs give byte-identical files.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

from aidc_dac.accounting import LEDGER_FIELDS, RemovalSummary, SensitivityRow
from aidc_dac.economics import CostSummary
from aidc_dac.errors import ModelError, ValidationError
from aidc_dac.pipeline import DiffReport, ScenarioResult, state_rankings
from aidc_dac.units import MONTHS

SUMMARY_FIELDS = ("state_id", "county_id", "m_tot_annual_t", "m_net_annual_t", "aidc_electricity_mwh",
                  "aidc_indirect_emissions_t", "removal_ratio", "pue")
COST_FIELDS = ("state_id", "scenario", "opex", "capex_heat_pump", "capex_dac", "capex_fan", "capex_absorbent",
               "lccc", "capex_other", "annual_capture_t") + tuple(f"beta_{m:02d}" for m in MONTHS)
SENSITIVITY_FIELDS = ("temp_c", "cef_kg_per_mwh", "phi_baseline", "phi_integrated", "uplift")
RANKING_FIELDS = ("metric", "rank", "state_id", "value")
DIFF_COUNTY_FIELDS = ("state_id", "county_id", "phi_a", "phi_b", "delta_phi", "capture_a_t", "capture_b_t",
                      "delta_capture_t", "flip", "reverse_flip")
DIFF_STATE_FIELDS = ("state_id", "lccc_a", "lccc_b", "delta_lccc", "phi_a", "phi_b", "delta_phi",
                     "capture_a_t", "capture_b_t", "delta_capture_t")

UNDEFINED = "undefined"

_CAPEX_COLUMNS = {"heat_pump": "capex_heat_pump", "dac_module": "capex_dac", "fan": "capex_fan",
                  "absorbent": "capex_absorbent", "other": "capex_other"}


def _cell(value: Any) -> str:
    if value is None:
        return UNDEFINED
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\r\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_cell(v) for v in row])
    except OSError as exc:
        raise ModelError(f"cannot write {path}: {exc}") from exc


def write_json(path: Path, payload: Any) -> None:
    try:
        path.write_text(json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n", encoding="utf-8")
    except OSError as exc:
        raise ModelError(f"cannot write {path}: {exc}") from exc


def _out_dir(out_dir: str | Path) -> Path:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ModelError(f"cannot create output directory {out}: {exc}") from exc
    return out


def summary_row(s: RemovalSummary) -> tuple:
    return (s.state_id, s.county_id, s.m_tot_annual, s.m_net_annual, s.aidc_electricity,
            s.aidc_indirect_emissions, s.removal_ratio, s.pue)


def cost_row(c: CostSummary) -> tuple:
    capex = {col: c.capex_by_item.get(item, 0.0) for item, col in _CAPEX_COLUMNS.items()}
    return ((c.state_id, c.scenario, c.opex, capex["capex_heat_pump"], capex["capex_dac"], capex["capex_fan"],
             capex["capex_absorbent"], c.lccc, capex["capex_other"], c.annual_capture)
            + tuple(c.beta[m] for m in MONTHS))


def sensitivity_rows(rows: Iterable[SensitivityRow]) -> list[tuple]:
    return [(r.temp_c, r.cef, r.phi_baseline, r.phi_integrated, r.uplift) for r in rows]


def write_sensitivity(rows: Iterable[SensitivityRow], out_dir: str | Path) -> Path:
    path = _out_dir(out_dir) / "sensitivity.csv"
    write_csv(path, SENSITIVITY_FIELDS, sensitivity_rows(rows))
    return path


def emit_reports(result: ScenarioResult | None, out_dir: str | Path,
                 sensitivity: Iterable[SensitivityRow] = ()) -> list[Path]:
    """Write ledger, summary, costs, national, sensitivity and rankings files.

    ``result=None`` writes header-only tables and an empty national.json.
    """
    out = _out_dir(out_dir)
    paths = [out / name for name in ("ledger.csv", "summary.csv", "costs.csv", "sensitivity.csv",
                                     "rankings.csv", "national.json")]
    if result is None:
        ledger, summaries, costs, rankings, national = [], [], [], [], {}
    else:
        ledger = [e.row() for e in result.ledger]
        summaries = [summary_row(s) for s in result.summaries]
        costs = [cost_row(c) for c in result.costs]
        rankings = state_rankings(result)
        national = dict(result.national, provenance=result.provenance,
                        states={sid: {"waste_heat_mwh": result.state_heat.get(sid),
                                      "removal_ratio": result.state_ratio.get(sid)}
                                for sid in result.state_ids})
    write_csv(paths[0], LEDGER_FIELDS, ledger)
    write_csv(paths[1], SUMMARY_FIELDS, summaries)
    write_csv(paths[2], COST_FIELDS, costs)
    write_csv(paths[3], SENSITIVITY_FIELDS, sensitivity_rows(sensitivity))
    write_csv(paths[4], RANKING_FIELDS, rankings)
    write_json(paths[5], national)
    return paths


def write_diff(report: DiffReport, out_dir: str | Path) -> list[Path]:
    out = _out_dir(out_dir)
    paths = [out / "diff_counties.csv", out / "diff_states.csv", out / "diff.json"]
    write_csv(paths[0], DIFF_COUNTY_FIELDS, ([row[k] for k in DIFF_COUNTY_FIELDS] for row in report.counties))
    write_csv(paths[1], DIFF_STATE_FIELDS, ([row[k] for k in DIFF_STATE_FIELDS] for row in report.states))
    write_json(paths[2], {"a": report.name_a, "b": report.name_b, "flips": report.flips,
                          "reverse_flips": report.reverse_flips, "counties": len(report.counties)})
    return paths


# ---------------------------------------------------------------- reading back

def _read(path: Path, header: Sequence[str]) -> list[dict[str, str]]:
    if not path.is_file():
        raise ValidationError("result file not found", file=str(path))
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != tuple(header):
            raise ValidationError(f"unexpected header {reader.fieldnames}", file=str(path), row=1)
        return list(reader)


def _num(raw: str) -> float | None:
    return None if raw in ("", UNDEFINED) else float(raw)


def load_result(out_dir: str | Path) -> ScenarioResult:
    """Rebuild the comparable parts of a result (summaries, costs, totals) from a run directory."""
    out = Path(out_dir)
    summaries = [
        RemovalSummary(r["state_id"], r["county_id"], float(r["m_tot_annual_t"]), float(r["m_net_annual_t"]),
                       float(r["aidc_electricity_mwh"]), float(r["aidc_indirect_emissions_t"]),
                       _num(r["removal_ratio"]), float(r["pue"]))
        for r in _read(out / "summary.csv", SUMMARY_FIELDS)
    ]
    costs = []
    for r in _read(out / "costs.csv", COST_FIELDS):
        capex = {item: float(r[col]) for item, col in _CAPEX_COLUMNS.items()}
        beta = {m: float(r[f"beta_{m:02d}"]) for m in MONTHS}
        costs.append(CostSummary(r["state_id"], r["scenario"], float(r["opex"]), capex, float(r["lccc"]), beta,
                                 float(r["annual_capture_t"])))
    national_path = out / "national.json"
    if not national_path.is_file():
        raise ValidationError("result file not found", file=str(national_path))
    national = json.loads(national_path.read_text(encoding="utf-8"))
    states = national.get("states", {})
    return ScenarioResult(
        name=national.get("scenario", out.name),
        year=national.get("year", ""),
        mode=national.get("mode", ""),
        summaries=summaries,
        costs=costs,
        national=national,
        state_heat={sid: v.get("waste_heat_mwh") for sid, v in states.items()},
        state_ratio={sid: v.get("removal_ratio") for sid, v in states.items()},
        state_ids=list(states),
        provenance=national.get("provenance", {}),
    )
