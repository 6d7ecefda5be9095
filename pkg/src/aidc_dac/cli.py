"""Command line entry point: ``aidc-dac run | compare | validate | sensitivity``.

Exit codes: 0 success, 2 validation failure, 3 runtime error.
"""

from __future__ import annotations

import functools
import logging
import sys

import click

from aidc_dac.errors import ModelError, ValidationError
from aidc_dac.io import load_and_validate, load_scenario
from aidc_dac.pipeline import compare_scenarios, run_inputs, scenario_sensitivity
from aidc_dac.reports import emit_reports, load_result, write_diff, write_sensitivity

EXIT_VALIDATION = 2
EXIT_RUNTIME = 3

log = logging.getLogger("aidc_dac")


def parse_range(text: str) -> list[float]:
    """``"100:550:50"`` (inclusive) or ``"100,250,400"`` -> list of floats."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise click.BadParameter("range must look like start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise click.BadParameter("range needs step > 0 and stop >= start")
        count = int((stop - start) / step + 1e-9)
        return [start + i * step for i in range(count + 1)]
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"not a number list: {text!r}") from None


def _handled(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationError as exc:
            click.echo(f"validation error: {exc}", err=True)
            sys.exit(EXIT_VALIDATION)
        except (ModelError, OSError, ValueError, ArithmeticError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_RUNTIME)
    return wrapper


def _report_warnings(warnings):
    for msg in warnings:
        click.echo(f"warning: {msg}", err=True)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def main(verbose: bool) -> None:
    """Simulate DAC regenerated with upgraded AI data center waste heat."""
    logging.basicConfig(level=logging.INFO if verbose else logging.ERROR, format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.option("--scenario", "scenario_path", required=True, type=click.Path(dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--strict", is_flag=True, default=None, help="Unknown columns/keys and off-grid climate are errors.")
@click.option("--threads", default=1, show_default=True, type=click.IntRange(min=1))
@_handled
def run(scenario_path: str, out_dir: str, strict: bool | None, threads: int) -> None:
    """Run one scenario and write its result tables."""
    config = load_scenario(scenario_path, strict=strict or None)
    inputs = load_and_validate(config)
    result = run_inputs(inputs, threads)
    sensitivity = scenario_sensitivity(inputs)
    _report_warnings(result.warnings)
    paths = emit_reports(result, out_dir, sensitivity)
    national = result.national
    click.echo(f"{config.name} [{config.mode}]: gross capture {national['gross_capture_kt']:.3f} kt, "
               f"net removal {national['net_removal_kt']:.3f} kt across {national['counties']} counties")
    click.echo(f"wrote {len(paths)} files to {out_dir}")


@main.command()
@click.option("--a", "dir_a", required=True, type=click.Path(file_okay=False, exists=True))
@click.option("--b", "dir_b", required=True, type=click.Path(file_okay=False, exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@_handled
def compare(dir_a: str, dir_b: str, out_dir: str) -> None:
    """Compare two run directories county by county."""
    report = compare_scenarios(load_result(dir_a), load_result(dir_b))
    write_diff(report, out_dir)
    click.echo(f"{len(report.counties)} counties compared; {len(report.flips)} feasibility flip(s)")
    for county in report.flips:
        click.echo(f"  flip: {county}")


@main.command()
@click.option("--scenario", "scenario_path", required=True, type=click.Path(dir_okay=False))
@click.option("--strict", is_flag=True, default=None)
@_handled
def validate(scenario_path: str, strict: bool | None) -> None:
    """Check a scenario and all its input files without running it."""
    inputs = load_and_validate(load_scenario(scenario_path, strict=strict or None))
    _report_warnings(inputs.warnings)
    counties = sum(len(s.counties) for s in inputs.tree.states)
    click.echo(f"ok: {len(inputs.fleet)} server records, {len(inputs.tree.states)} states, {counties} counties, "
               f"{len(inputs.warnings)} warning(s)")


@main.command()
@click.option("--scenario", "scenario_path", required=True, type=click.Path(dir_okay=False))
@click.option("--cef", default=None, help="CEF values, start:stop:step or comma list (kg CO2/MWh).")
@click.option("--temps", default=None, help="Comma-separated ambient temperatures (deg C).")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--strict", is_flag=True, default=None)
@_handled
def sensitivity(scenario_path: str, cef: str | None, temps: str | None, out_dir: str, strict: bool | None) -> None:
    """Removal ratio versus grid CEF for both scenarios of one synthetic county."""
    inputs = load_and_validate(load_scenario(scenario_path, strict=strict or None))
    rows = scenario_sensitivity(inputs, parse_range(cef) if cef else None, parse_range(temps) if temps else None)
    path = write_sensitivity(rows, out_dir)
    click.echo(f"wrote {len(rows)} rows to {path}")


if __name__ == "__main__":
    main()
