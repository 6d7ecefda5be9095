"""Region tree (states -> counties) and proportional heat allocation."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from aidc_dac.errors import ValidationError

log = logging.getLogger(__name__)

SHARE_TOLERANCE = 1e-9
RENORMALIZE_TOLERANCE = 1e-6
TEMP_BOUNDS_C = (-60.0, 60.0)


@dataclass(frozen=True)
class ClimateSeries:
    """Twelve monthly mean temperatures (deg C) and relative humidities (fraction)."""

    temp_c: tuple[float, ...]
    rh: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "temp_c", tuple(float(t) for t in self.temp_c))
        object.__setattr__(self, "rh", tuple(float(r) for r in self.rh))
        if len(self.temp_c) != 12 or len(self.rh) != 12:
            raise ValidationError("climate series needs exactly 12 monthly entries")
        lo, hi = TEMP_BOUNDS_C
        for i, (t, r) in enumerate(zip(self.temp_c, self.rh), start=1):
            if not (math.isfinite(t) and lo <= t <= hi):
                raise ValidationError(f"month {i}: temperature {t} C outside [{lo}, {hi}]")
            if not (math.isfinite(r) and 0.0 <= r <= 1.0):
                raise ValidationError(f"month {i}: relative humidity {r} outside [0, 1]")

    @classmethod
    def constant(cls, temp_c: float, rh: float) -> ClimateSeries:
        return cls((temp_c,) * 12, (rh,) * 12)

    def at(self, month: int) -> tuple[float, float]:
        return self.temp_c[month - 1], self.rh[month - 1]


@dataclass(frozen=True)
class CountyNode:
    county_id: str
    gamma: float
    climate: ClimateSeries


@dataclass(frozen=True)
class StateNode:
    state_id: str
    alpha: float
    cef: float  # kg CO2 / MWh
    price: float  # $ / MWh
    counties: tuple[CountyNode, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "counties", tuple(self.counties))


@dataclass(frozen=True)
class RegionTree:
    states: tuple[StateNode, ...]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))

    def state(self, state_id: str) -> StateNode:
        for s in self.states:
            if s.state_id == state_id:
                return s
        raise KeyError(state_id)

    def counties(self):
        """Yield ``(state, county)`` pairs in tree order."""
        for s in self.states:
            for c in s.counties:
                yield s, c

    def validate(self) -> None:
        if not self.states:
            raise ValidationError("region tree has no states")
        seen_states, seen_counties = set(), set()
        for s in self.states:
            if s.state_id in seen_states:
                raise ValidationError(f"duplicate state_id {s.state_id!r}")
            seen_states.add(s.state_id)
            for name, value in (("alpha", s.alpha), ("cef", s.cef), ("price", s.price)):
                if not (math.isfinite(value) and value >= 0):
                    raise ValidationError(f"state {s.state_id}: {name}={value} must be finite and >= 0")
            for c in s.counties:
                if c.county_id in seen_counties:
                    raise ValidationError(f"duplicate county_id {c.county_id!r}")
                seen_counties.add(c.county_id)
                if not (math.isfinite(c.gamma) and c.gamma >= 0):
                    raise ValidationError(f"county {c.county_id}: gamma={c.gamma} must be finite and >= 0")
            if s.counties:
                check_share_sum([c.gamma for c in s.counties], f"gamma shares of state {s.state_id}")
        check_share_sum([s.alpha for s in self.states], "state alpha shares")


def share_residual(shares: Sequence[float]) -> float:
    return math.fsum(shares) - 1.0


def check_share_sum(shares: Sequence[float], what: str, tol: float = SHARE_TOLERANCE) -> None:
    residual = share_residual(shares)
    if abs(residual) > tol:
        raise ValidationError(f"{what} sum to {1.0 + residual:.12g}, residual {-residual:.6g} (tolerance {tol:g})")


def reconcile_shares(shares: Mapping[str, float], what: str,
                     warnings: list[str] | None = None) -> dict[str, float]:
    """Accept shares that sum to one, renormalizing small rounding residuals.

    Residuals up to ``RENORMALIZE_TOLERANCE`` are divided out with a warning;
    anything larger is a hard error that reports the residual.
    """
    shares = dict(shares)
    for key, value in shares.items():
        if not (math.isfinite(value) and value >= 0):
            raise ValidationError(f"{what}: share for {key!r} is {value}, must be finite and >= 0")
    residual = share_residual(list(shares.values()))
    if abs(residual) <= SHARE_TOLERANCE:
        return shares
    if abs(residual) <= RENORMALIZE_TOLERANCE:
        msg = f"{what} sum to {1.0 + residual:.12g}; renormalized (residual {-residual:.3g})"
        log.warning(msg)
        if warnings is not None:
            warnings.append(msg)
        total = math.fsum(shares.values())
        return {key: value / total for key, value in shares.items()}
    raise ValidationError(f"{what} sum to {1.0 + residual:.12g}, residual {-residual:.6g}")


def normalize_shares(capacities: Mapping[str, float]) -> dict[str, float]:
    """Convert raw capacities (MW or MWh, any consistent unit) to shares summing to one."""
    for key, value in capacities.items():
        if not (math.isfinite(value) and value >= 0):
            raise ValidationError(f"capacity for {key!r} is {value}, must be finite and >= 0")
    total = math.fsum(capacities.values())
    if total <= 0:
        raise ValidationError("capacities sum to zero; shares undefined")
    return {key: value / total for key, value in capacities.items()}


def allocate_to_states(q_tot: float, tree: RegionTree) -> dict[str, float]:
    """Split national recoverable heat (MWh) to states by their alpha shares."""
    check_share_sum([s.alpha for s in tree.states], "state alpha shares")
    return {s.state_id: s.alpha * q_tot for s in tree.states}


def allocate_to_counties(q_state: float, state: StateNode) -> dict[str, float]:
    """Split a state's heat (MWh) to its counties by gamma shares.

    A state with no counties yields an empty mapping.
    """
    if not state.counties:
        return {}
    check_share_sum([c.gamma for c in state.counties], f"gamma shares of state {state.state_id}")
    return {c.county_id: c.gamma * q_state for c in state.counties}
