"""Heat-pump upgrade of low-grade heat and climate-dependent DAC energy demand."""

from __future__ import annotations

import bisect
import csv
import logging
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from aidc_dac.errors import ValidationError
from aidc_dac.units import gj_to_mwh

log = logging.getLogger(__name__)

MODES = ("integrated", "standalone")
COP_MODELS = ("constant", "table")

INTEGRATED_COP = 3.51
STANDALONE_COP = 2.0
EXCHANGER_EFFICIENCY = 0.9


@dataclass(frozen=True)
class HeatSupplySpec:
    """Heat-pump configuration for one scenario mode.

    With ``cop_model="table"`` the COP is interpolated linearly in source
    temperature from ``cop_table`` ((source_temp_c, cop) pairs) and clamped at
    the table ends; otherwise ``cop`` is used for every month.
    """

    mode: str
    cop: float
    eta: float = 1.0
    source_temp_c: float = 60.0
    sink_temp_c: float = 100.0
    cop_model: str = "constant"
    cop_table: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        table = tuple(sorted((float(t), float(c)) for t, c in self.cop_table))
        object.__setattr__(self, "cop_table", table)

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ValidationError(f"heat supply mode must be one of {MODES}, got {self.mode!r}")
        if not (math.isfinite(self.cop) and self.cop > 1.0):
            raise ValidationError(f"{self.mode} COP={self.cop} must be > 1 (COP/(COP-1) is singular at 1)")
        if not (math.isfinite(self.eta) and 0.0 < self.eta <= 1.0):
            raise ValidationError(f"{self.mode} exchanger efficiency eta={self.eta} outside (0, 1]")
        if not self.sink_temp_c > self.source_temp_c:
            raise ValidationError(
                f"{self.mode} sink temperature {self.sink_temp_c} C must exceed source {self.source_temp_c} C")
        if self.cop_model not in COP_MODELS:
            raise ValidationError(f"cop_model must be one of {COP_MODELS}, got {self.cop_model!r}")
        if self.cop_model == "table":
            if len(self.cop_table) < 2:
                raise ValidationError("cop_model 'table' needs at least two (source_temp_c, cop) points")
            temps = [t for t, _ in self.cop_table]
            if len(set(temps)) != len(temps):
                raise ValidationError("cop_table has duplicate source temperatures")
            if any(not (math.isfinite(c) and c > 1.0) for _, c in self.cop_table):
                raise ValidationError("every cop_table entry must be > 1")

    def cop_at(self, source_temp_c: float | None = None) -> float:
        if self.cop_model == "constant" or source_temp_c is None:
            return self.cop
        temps = [t for t, _ in self.cop_table]
        cops = [c for _, c in self.cop_table]
        if source_temp_c <= temps[0]:
            return cops[0]
        if source_temp_c >= temps[-1]:
            return cops[-1]
        i = bisect.bisect_right(temps, source_temp_c)
        w = (source_temp_c - temps[i - 1]) / (temps[i] - temps[i - 1])
        return cops[i - 1] + w * (cops[i] - cops[i - 1])


def _cop(spec: HeatSupplySpec, source_temp_c: float | None) -> float:
    cop = spec.cop_at(source_temp_c)
    if not cop > 1.0:
        raise ValidationError(f"COP={cop} must be > 1")
    return cop


def upgrade_heat(q_lo: float, spec: HeatSupplySpec, source_temp_c: float | None = None) -> float:
    """High-grade regeneration heat from low-grade AIDC heat (MWh).

    ``q_hi = q_lo * eta**2 * COP / (COP - 1)``; eta is applied once for the
    evaporator and once for the condenser.
    """
    if spec.mode != "integrated":
        raise ValueError("upgrade_heat applies to integrated heat supply only")
    if q_lo < 0 or not math.isfinite(q_lo):
        raise ValueError(f"low-grade heat must be finite and >= 0, got {q_lo}")
    cop = _cop(spec, source_temp_c)
    return q_lo * spec.eta ** 2 * cop / (cop - 1.0)


def heat_pump_electricity(q_hi: float, spec: HeatSupplySpec, source_temp_c: float | None = None) -> float:
    if q_hi < 0 or not math.isfinite(q_hi):
        raise ValueError(f"regeneration heat must be finite and >= 0, got {q_hi}")
    return q_hi / _cop(spec, source_temp_c)


def standalone_heat_electricity(q_hi_required: float, spec: HeatSupplySpec,
                                source_temp_c: float | None = None) -> float:
    """Electricity for an ambient-source heat pump covering all regeneration heat."""
    if spec.mode != "standalone":
        raise ValueError("standalone_heat_electricity needs a standalone heat supply spec")
    return heat_pump_electricity(q_hi_required, spec, source_temp_c)


@dataclass(frozen=True)
class DacResponseSurface:
    """Per-tonne regeneration heat and electricity on a rectangular (T, RH) grid.

    Node values are stored in GJ/t as tabulated; :meth:`evaluate` returns MWh/t.
    ``q_th[i][j]`` belongs to ``temps[i]`` and ``rhs[j]``.
    """

    temps: tuple[float, ...]
    rhs: tuple[float, ...]
    q_th: tuple[tuple[float, ...], ...]
    e_elec: tuple[tuple[float, ...], ...]
    source: str = field(default="", compare=False)

    def validate(self) -> None:
        where = self.source or "response surface"
        if len(self.temps) < 2 or len(self.rhs) < 2:
            raise ValidationError(f"{where}: grid needs at least two temperatures and two RH values")
        if list(self.temps) != sorted(set(self.temps)) or list(self.rhs) != sorted(set(self.rhs)):
            raise ValidationError(f"{where}: grid axes must be strictly increasing")
        for i, t in enumerate(self.temps):
            for j, r in enumerate(self.rhs):
                q, e = self.q_th[i][j], self.e_elec[i][j]
                if not (math.isfinite(q) and q > 0):
                    raise ValidationError(f"{where}: q_th={q} at (T={t}, RH={r}) must be > 0")
                if not (math.isfinite(e) and e >= 0):
                    raise ValidationError(f"{where}: e_elec={e} at (T={t}, RH={r}) must be >= 0")
                if j and q < self.q_th[i][j - 1]:
                    raise ValidationError(
                        f"{where}: q_th must not decrease with RH at T={t} (RH {self.rhs[j - 1]} -> {r})")

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[float, float, float, float]], source: str = "") -> DacResponseSurface:
        """Build from ``(temp_c, rh, q_th_gj_per_t, e_elec_gj_per_t)`` rows forming a full grid."""
        nodes: dict[tuple[float, float], tuple[float, float]] = {}
        for t, r, q, e in rows:
            key = (float(t), float(r))
            if key in nodes:
                raise ValidationError(f"{source or 'response surface'}: duplicate node T={t}, RH={r}")
            nodes[key] = (float(q), float(e))
        temps = tuple(sorted({t for t, _ in nodes}))
        rhs = tuple(sorted({r for _, r in nodes}))
        missing = [(t, r) for t in temps for r in rhs if (t, r) not in nodes]
        if missing:
            t, r = missing[0]
            raise ValidationError(
                f"{source or 'response surface'}: grid is not rectangular; "
                f"{len(missing)} node(s) missing, first at T={t}, RH={r}")
        surface = cls(
            temps, rhs,
            tuple(tuple(nodes[t, r][0] for r in rhs) for t in temps),
            tuple(tuple(nodes[t, r][1] for r in rhs) for t in temps),
            source,
        )
        surface.validate()
        return surface

    @classmethod
    def from_csv(cls, path: str | Path) -> DacResponseSurface:
        from aidc_dac.io import read_table  # local import: io depends on this module

        table = read_table(path, ["temp_c", "rh", "q_th_gj_per_t", "e_elec_gj_per_t"])
        rows = [(rec.float("temp_c"), rec.float("rh"), rec.float("q_th_gj_per_t"), rec.float("e_elec_gj_per_t"))
                for rec in table.records]
        return cls.from_rows(rows, source=str(path))

    def in_range(self, temp_c: float, rh: float) -> bool:
        return self.temps[0] <= temp_c <= self.temps[-1] and self.rhs[0] <= rh <= self.rhs[-1]

    def evaluate(self, temp_c: float, rh: float, strict: bool = False,
                 warnings: list[str] | None = None) -> tuple[float, float]:
        return evaluate_demand(self, temp_c, rh, strict=strict, warnings=warnings)


def _cell(axis: Sequence[float], x: float) -> tuple[int, float]:
    i = min(max(bisect.bisect_right(axis, x) - 1, 0), len(axis) - 2)
    return i, (x - axis[i]) / (axis[i + 1] - axis[i])


def _bilinear(grid, i: int, j: int, u: float, v: float) -> float:
    return ((1 - u) * (1 - v) * grid[i][j] + u * (1 - v) * grid[i + 1][j]
            + (1 - u) * v * grid[i][j + 1] + u * v * grid[i + 1][j + 1])


def evaluate_demand(surface: DacResponseSurface, temp_c: float, rh: float, strict: bool = False,
                    warnings: list[str] | None = None) -> tuple[float, float]:
    """Bilinear ``(q_th, e_elec)`` in MWh per tonne CO2 at ``(temp_c, rh)``.

    Queries outside the grid raise under ``strict``; otherwise they are clamped
    to the grid edge and a warning is recorded.
    """
    if not surface.in_range(temp_c, rh):
        msg = (f"climate query T={temp_c} C, RH={rh} outside response grid "
               f"T[{surface.temps[0]}, {surface.temps[-1]}] x RH[{surface.rhs[0]}, {surface.rhs[-1]}]")
        if strict:
            raise ValidationError(msg)
        log.warning("%s; clamped", msg)
        if warnings is not None:
            warnings.append(msg + "; clamped")
        temp_c = min(max(temp_c, surface.temps[0]), surface.temps[-1])
        rh = min(max(rh, surface.rhs[0]), surface.rhs[-1])
    i, u = _cell(surface.temps, temp_c)
    j, v = _cell(surface.rhs, rh)
    return gj_to_mwh(_bilinear(surface.q_th, i, j, u, v)), gj_to_mwh(_bilinear(surface.e_elec, i, j, u, v))


def default_surface() -> DacResponseSurface:
    """Packaged 5x5 surface (calibrated placeholder, not published data)."""
    ref = resources.files("aidc_dac") / "data" / "dac_response.csv"
    with resources.as_file(ref) as path:
        return DacResponseSurface.from_csv(path)
