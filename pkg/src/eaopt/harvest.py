"""Harvested-energy traces and their conversion to per-period budgets.

Traces are piecewise-constant time series: each sample holds from its
timestamp until the next one, and the last sample holds for as long as
the previous gap (or one period when the trace has a single sample).
Two trace modes are supported:

* ``irradiance``: values in W/m2, converted to electrical power through
  a PanelModel and integrated into per-period energy budgets.
* ``budget``: values already in joules per sample period, re-binned
  onto the requested period grid.

Trace CSV format::

    #mode: irradiance
    #units: W/m2
    timestamp,value
    0,412.5

``#mode`` is required; ``#units`` is optional but must match the mode
(W/m2 for irradiance, J for budget) when present.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

IRRADIANCE = "irradiance"
BUDGET = "budget"
TRACE_HEADER = "timestamp,value"
BUDGET_HEADER = "period_start,budget_joules"

_MODE_UNITS = {IRRADIANCE: "W/m2", BUDGET: "J"}


class TraceError(ValueError):
    """Unparseable or invalid trace data."""


@dataclass(frozen=True)
class HarvestTrace:
    times: np.ndarray  # seconds, strictly increasing
    values: np.ndarray  # W/m2 (irradiance mode) or joules (budget mode)
    mode: str


@dataclass(frozen=True)
class PanelModel:
    """Irradiance-to-power conversion: power = irradiance * area * efficiency.

    budget_cap, when set, clips each period's budget in joules (storage
    limit of the harvesting front end).
    """

    area: float = 2e-3  # m2
    efficiency: float = 0.15
    budget_cap: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.area) and self.area > 0):
            raise ValueError(f"panel area {self.area!r} must be finite and > 0")
        if not (math.isfinite(self.efficiency) and 0 < self.efficiency <= 1):
            raise ValueError(f"panel efficiency {self.efficiency!r} outside (0, 1]")
        if self.budget_cap is not None and not (
            math.isfinite(self.budget_cap) and self.budget_cap >= 0
        ):
            raise ValueError(f"budget cap {self.budget_cap!r} must be finite and >= 0")


@dataclass(frozen=True)
class BudgetSeries:
    """Per-period energy budgets on a contiguous grid of equal periods."""

    period_length: float
    starts: np.ndarray  # seconds, starts[k] = starts[0] + k * period_length
    budgets: np.ndarray  # joules

    def __len__(self) -> int:
        return len(self.budgets)


def _read_text(source) -> str:
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text()


def load_trace(source, fmt: str = "csv") -> HarvestTrace:
    """Parse a trace CSV from a path or file-like object."""
    if fmt != "csv":
        raise TraceError(f"unknown trace format {fmt!r}")
    text = _read_text(source)
    mode = None
    units = None
    header_seen = False
    times: list[float] = []
    values: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("mode:"):
                mode = body[len("mode:"):].strip()
                if mode not in _MODE_UNITS:
                    raise TraceError(f"line {lineno}: unknown trace mode {mode!r}")
            elif body.startswith("units:"):
                units = body[len("units:"):].strip()
            continue
        parts = [p.strip() for p in line.split(",")]
        if ",".join(parts) == TRACE_HEADER:
            header_seen = True
            continue
        if not header_seen:
            raise TraceError(f"line {lineno}: expected header {TRACE_HEADER!r} before data rows")
        if len(parts) != 2:
            raise TraceError(f"line {lineno}: expected 2 fields, got {len(parts)}")
        try:
            t, v = float(parts[0]), float(parts[1])
        except ValueError:
            raise TraceError(f"line {lineno}: bad numeric field in {line!r}") from None
        if not (math.isfinite(t) and math.isfinite(v)):
            raise TraceError(f"line {lineno}: non-finite value in {line!r}")
        if v < 0:
            raise TraceError(f"line {lineno}: negative value {v!r}")
        if times and t <= times[-1]:
            raise TraceError(
                f"line {lineno}: timestamp {t!r} not after previous {times[-1]!r}"
            )
        times.append(t)
        values.append(v)
    if mode is None:
        raise TraceError("missing '#mode: irradiance|budget' metadata line")
    if units is not None and units != _MODE_UNITS[mode]:
        raise TraceError(
            f"units {units!r} do not match mode {mode!r} (expected {_MODE_UNITS[mode]!r})"
        )
    if not times:
        raise TraceError("trace has no samples")
    return HarvestTrace(np.array(times), np.array(values), mode)


def _sample_durations(times: np.ndarray, period_length: float) -> np.ndarray:
    """Hold times: each sample lasts until the next; the last sample
    lasts as long as the previous gap (one period for a single sample)."""
    if len(times) == 1:
        return np.array([period_length])
    gaps = np.diff(times)
    return np.concatenate([gaps, gaps[-1:]])


def irradiance_to_budget(
    trace: HarvestTrace, panel: PanelModel, period_length: float
) -> BudgetSeries:
    """Integrate a piecewise-constant irradiance trace into per-period joules."""
    if trace.mode != IRRADIANCE:
        raise TraceError(f"expected an irradiance trace, got mode {trace.mode!r}")
    if not (math.isfinite(period_length) and period_length > 0):
        raise TraceError(f"period length {period_length!r} must be finite and > 0")
    power = trace.values * panel.area * panel.efficiency  # watts
    durations = _sample_durations(trace.times, period_length)
    t0 = float(trace.times[0])
    span = float(trace.times[-1]) + float(durations[-1]) - t0
    n = max(1, math.ceil(span / period_length - 1e-9))
    budgets = np.zeros(n)
    for t, p, d in zip(trace.times, power, durations):
        start = float(t)
        remaining = float(d)
        while remaining > 0:
            k = min(int((start - t0) / period_length), n - 1)
            period_end = t0 + (k + 1) * period_length
            chunk = min(remaining, period_end - start)
            if chunk <= 0:  # numeric guard at period edges
                chunk = remaining
            budgets[k] += p * chunk
            start += chunk
            remaining -= chunk
    if panel.budget_cap is not None:
        budgets = np.minimum(budgets, panel.budget_cap)
    starts = t0 + period_length * np.arange(n)
    return BudgetSeries(period_length, starts, budgets)


def _rebin_budget_trace(
    trace: HarvestTrace, period_length: float, budget_cap: float | None
) -> BudgetSeries:
    t0 = float(trace.times[0])
    n = int((float(trace.times[-1]) - t0) // period_length) + 1
    budgets = np.zeros(n)
    for t, v in zip(trace.times, trace.values):
        budgets[int((float(t) - t0) // period_length)] += v
    if budget_cap is not None:
        budgets = np.minimum(budgets, budget_cap)
    starts = t0 + period_length * np.arange(n)
    return BudgetSeries(period_length, starts, budgets)


def trace_to_budgets(
    trace: HarvestTrace, panel: PanelModel, period_length: float
) -> BudgetSeries:
    """Convert either trace mode to a BudgetSeries on the period grid.

    Budget-mode samples are summed into the period containing their
    timestamp; grid periods with no samples get a zero budget.
    """
    if trace.mode == IRRADIANCE:
        return irradiance_to_budget(trace, panel, period_length)
    if trace.mode == BUDGET:
        if not (math.isfinite(period_length) and period_length > 0):
            raise TraceError(f"period length {period_length!r} must be finite and > 0")
        return _rebin_budget_trace(trace, period_length, panel.budget_cap)
    raise TraceError(f"unknown trace mode {trace.mode!r}")


def synth_trace(
    days: int,
    peak_irradiance: float = 10.0,
    day_length_fraction: float = 0.5,
    noise: float = 0.0,
    seed: int | None = None,
) -> HarvestTrace:
    """Synthetic hourly irradiance: a half-sine day, zero at night.

    Each day has 24 hourly samples evaluated at the hour midpoint; the
    half-sine spans the first day_length_fraction of the day, so the
    default leaves exactly 12 zero samples per day.  The default peak of
    10 W/m2 models a small indoor/desk-facing panel; pass ~1000 for full
    outdoor sun.  noise multiplies each daytime sample by a uniform
    factor in [1 - noise, 1 + noise] drawn from a seeded generator.
    """
    if days <= 0:
        raise TraceError(f"days {days!r} must be > 0")
    if not (0 < day_length_fraction <= 1):
        raise TraceError(f"day length fraction {day_length_fraction!r} outside (0, 1]")
    if not (0 <= noise < 1):
        raise TraceError(f"noise {noise!r} outside [0, 1)")
    hours = np.arange(24 * days)
    mid = (hours % 24 + 0.5) / 24.0  # day phase at the hour midpoint
    phase = mid / day_length_fraction
    values = np.where(phase < 1.0, peak_irradiance * np.sin(np.pi * phase), 0.0)
    if noise > 0:
        rng = np.random.default_rng(seed)
        values = values * rng.uniform(1.0 - noise, 1.0 + noise, size=len(values))
    return HarvestTrace(hours * 3600.0, values, IRRADIANCE)


def budget_series_to_csv(series: BudgetSeries) -> str:
    lines = [BUDGET_HEADER]
    for start, budget in zip(series.starts, series.budgets):
        lines.append(f"{float(start)!r},{float(budget)!r}")
    return "\n".join(lines) + "\n"


def load_budget_series(source, period_length: float | None = None) -> BudgetSeries:
    """Parse a BudgetSeries CSV; the grid must be contiguous and equal-step.

    period_length defaults to the first gap between period starts (one
    hour for a single row).
    """
    text = _read_text(source)
    header_seen = False
    starts: list[float] = []
    budgets: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if ",".join(parts) == BUDGET_HEADER:
            header_seen = True
            continue
        if not header_seen:
            raise TraceError(
                f"line {lineno}: expected header {BUDGET_HEADER!r} before data rows"
            )
        if len(parts) != 2:
            raise TraceError(f"line {lineno}: expected 2 fields, got {len(parts)}")
        try:
            s, b = float(parts[0]), float(parts[1])
        except ValueError:
            raise TraceError(f"line {lineno}: bad numeric field in {line!r}") from None
        if not (math.isfinite(s) and math.isfinite(b)) or b < 0:
            raise TraceError(f"line {lineno}: bad values in {line!r}")
        starts.append(s)
        budgets.append(b)
    if not starts:
        raise TraceError("budget series has no rows")
    if period_length is None:
        period_length = starts[1] - starts[0] if len(starts) > 1 else 3600.0
    if not (math.isfinite(period_length) and period_length > 0):
        raise TraceError(f"period length {period_length!r} must be finite and > 0")
    for k, s in enumerate(starts):
        expected = starts[0] + k * period_length
        if abs(s - expected) > 1e-6 * max(1.0, abs(expected)):
            raise TraceError(
                f"period starts are not a contiguous grid: index {k} is {s!r}, "
                f"expected {expected!r}"
            )
    return BudgetSeries(float(period_length), np.array(starts), np.array(budgets))
