"""Multi-period simulation and parameter sweeps over the allocator.

Runs the optimizer across a BudgetSeries, solves every static
single-mode baseline for the same budgets, and aggregates normalized
performance ratios.  Periods are independent (no energy rollover), so
records preserve input order and the whole run is reproducible.

When a static baseline scores zero for a period (the budget covers only
the keep-alive floor, or nothing at all), the ratio for that period is
undefined; aggregates count those periods instead of folding infinities
into the means.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .allocator import (
    Allocation,
    AllocationProblem,
    optimize_allocation,
    static_dp_allocation,
)
from .catalog import Catalog
from .harvest import BudgetSeries


@dataclass(frozen=True)
class RatioStats:
    """Aggregate of optimized/static objective ratios over periods where
    the static objective is positive."""

    mean: float | None
    min: float | None
    max: float | None
    defined: int
    undefined: int


@dataclass(frozen=True)
class PeriodRecord:
    index: int
    start: float
    budget: float
    optimized: Allocation
    statics: dict[int, Allocation]
    ratios: dict[int, float | None]  # None when the static objective is 0


@dataclass(frozen=True)
class SimulationReport:
    alpha: float
    period_length: float
    dp_ids: tuple[int, ...]
    dp_labels: tuple[str, ...]
    records: tuple[PeriodRecord, ...]
    ratio_stats: dict[int, RatioStats]
    mean_expected_accuracy: float
    mean_active_fraction: float
    time_share: dict[int, float]  # fraction of total time on each DP
    off_share: float


def _period_record(
    index: int,
    start: float,
    budget: float,
    catalog: Catalog,
    alpha: float,
    period_length: float,
) -> PeriodRecord:
    problem = AllocationProblem(period_length, budget, alpha, catalog)
    optimized = optimize_allocation(problem)
    statics = {
        dp.id: static_dp_allocation(dp, period_length, budget, catalog.off_power, alpha)
        for dp in catalog
    }
    ratios: dict[int, float | None] = {}
    for dp_id, static in statics.items():
        if static.objective <= 0.0:
            ratios[dp_id] = None
        else:
            ratios[dp_id] = optimized.objective / static.objective
    return PeriodRecord(index, start, budget, optimized, statics, ratios)


def _build_report(
    records: tuple[PeriodRecord, ...],
    catalog: Catalog,
    alpha: float,
    period_length: float,
) -> SimulationReport:
    n = len(records)
    ratio_stats = {}
    for dp in catalog:
        defined = [r.ratios[dp.id] for r in records if r.ratios[dp.id] is not None]
        ratio_stats[dp.id] = RatioStats(
            mean=sum(defined) / len(defined) if defined else None,
            min=min(defined) if defined else None,
            max=max(defined) if defined else None,
            defined=len(defined),
            undefined=n - len(defined),
        )
    mean_acc = sum(r.optimized.expected_accuracy for r in records) / n
    mean_active = sum(r.optimized.active_fraction for r in records) / n
    total_time = n * period_length
    time_share = {}
    for k, dp in enumerate(catalog):
        time_share[dp.id] = sum(r.optimized.times[k] for r in records) / total_time
    off_share = sum(r.optimized.off_time for r in records) / total_time
    return SimulationReport(
        alpha=alpha,
        period_length=period_length,
        dp_ids=catalog.ids,
        dp_labels=catalog.labels,
        records=records,
        ratio_stats=ratio_stats,
        mean_expected_accuracy=mean_acc,
        mean_active_fraction=mean_active,
        time_share=time_share,
        off_share=off_share,
    )


def simulate(
    budgets: BudgetSeries,
    catalog: Catalog,
    alpha: float,
    period_length: float | None = None,
) -> SimulationReport:
    """One optimized-vs-static record per period, plus aggregates."""
    if period_length is None:
        period_length = budgets.period_length
    elif not math.isclose(period_length, budgets.period_length, rel_tol=1e-9):
        raise ValueError(
            f"period length {period_length!r} does not match the budget series "
            f"({budgets.period_length!r})"
        )
    if len(budgets) == 0:
        raise ValueError("budget series is empty")
    records = tuple(
        _period_record(i, float(start), float(budget), catalog, alpha, period_length)
        for i, (start, budget) in enumerate(zip(budgets.starts, budgets.budgets))
    )
    return _build_report(records, catalog, alpha, period_length)


@dataclass(frozen=True)
class SweepPoint:
    budget: float
    optimized: Allocation
    statics: dict[int, Allocation]


def budget_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive arithmetic grid start, start+step, ... up to stop."""
    if step <= 0:
        raise ValueError(f"step {step!r} must be > 0")
    if stop < start:
        raise ValueError(f"stop {stop!r} must be >= start {start!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def sweep_budget(
    catalog: Catalog,
    alpha: float,
    start: float,
    stop: float,
    step: float,
    period_length: float = 3600.0,
) -> list[SweepPoint]:
    """Optimizer and static baselines across a budget grid."""
    points = []
    for budget in budget_grid(start, stop, step):
        budget = float(budget)
        problem = AllocationProblem(period_length, budget, alpha, catalog)
        optimized = optimize_allocation(problem)
        statics = {
            dp.id: static_dp_allocation(dp, period_length, budget, catalog.off_power, alpha)
            for dp in catalog
        }
        points.append(SweepPoint(budget, optimized, statics))
    return points


@dataclass(frozen=True)
class AlphaPoint:
    alpha: float
    ratio_stats: dict[int, RatioStats]


def sweep_alpha(
    catalog: Catalog,
    budgets: BudgetSeries,
    alphas: list[float],
    period_length: float | None = None,
) -> list[AlphaPoint]:
    """Aggregate normalized ratios (with min/max bounds) for each alpha."""
    points = []
    for alpha in alphas:
        report = simulate(budgets, catalog, float(alpha), period_length)
        points.append(AlphaPoint(float(alpha), report.ratio_stats))
    return points


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def sweep_to_csv(points: list[SweepPoint], catalog: Catalog) -> str:
    """One row per budget: optimizer metrics then each static baseline's."""
    cols = ["budget_j", "opt_objective", "opt_expected_accuracy", "opt_active_fraction"]
    for dp in catalog:
        cols += [
            f"dp{dp.id}_objective",
            f"dp{dp.id}_expected_accuracy",
            f"dp{dp.id}_active_fraction",
        ]
    lines = [",".join(cols)]
    for pt in points:
        row = [
            pt.budget,
            pt.optimized.objective,
            pt.optimized.expected_accuracy,
            pt.optimized.active_fraction,
        ]
        for dp in catalog:
            static = pt.statics[dp.id]
            row += [static.objective, static.expected_accuracy, static.active_fraction]
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def alpha_sweep_to_csv(points: list[AlphaPoint], catalog: Catalog) -> str:
    cols = ["alpha"]
    for dp in catalog:
        cols += [
            f"dp{dp.id}_ratio_mean",
            f"dp{dp.id}_ratio_min",
            f"dp{dp.id}_ratio_max",
            f"dp{dp.id}_defined",
            f"dp{dp.id}_undefined",
        ]
    lines = [",".join(cols)]
    for pt in points:
        row: list = [pt.alpha]
        for dp in catalog:
            stats = pt.ratio_stats[dp.id]
            row += [stats.mean, stats.min, stats.max, stats.defined, stats.undefined]
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def report_to_json(report: SimulationReport) -> str:
    """Full report: aggregates plus every period record."""
    payload = {
        "alpha": report.alpha,
        "period_length": report.period_length,
        "dp_ids": list(report.dp_ids),
        "dp_labels": list(report.dp_labels),
        "periods": len(report.records),
        "mean_expected_accuracy": report.mean_expected_accuracy,
        "mean_active_fraction": report.mean_active_fraction,
        "time_share": {str(i): s for i, s in report.time_share.items()},
        "off_share": report.off_share,
        "ratio_stats": {
            str(i): {
                "mean": st.mean,
                "min": st.min,
                "max": st.max,
                "defined": st.defined,
                "undefined": st.undefined,
            }
            for i, st in report.ratio_stats.items()
        },
        "records": [
            {
                "index": r.index,
                "start": r.start,
                "budget": r.budget,
                "optimized": r.optimized.to_dict(),
                "statics": {str(i): a.to_dict() for i, a in r.statics.items()},
                "ratios": {str(i): v for i, v in r.ratios.items()},
            }
            for r in report.records
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def report_to_csv(report: SimulationReport) -> str:
    """One row per period; undefined ratios serialize as empty cells."""
    cols = ["index", "start", "budget_j", "opt_objective", "opt_expected_accuracy",
            "opt_active_fraction", "opt_off_time"]
    for dp_id in report.dp_ids:
        cols += [f"dp{dp_id}_time", f"dp{dp_id}_static_objective", f"dp{dp_id}_ratio"]
    lines = [",".join(cols)]
    for r in report.records:
        row: list = [
            r.index,
            r.start,
            r.budget,
            r.optimized.objective,
            r.optimized.expected_accuracy,
            r.optimized.active_fraction,
            r.optimized.off_time,
        ]
        for k, dp_id in enumerate(report.dp_ids):
            row += [r.optimized.times[k], r.statics[dp_id].objective, r.ratios[dp_id]]
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"
