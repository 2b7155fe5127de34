#!/usr/bin/env python3
"""Budget sweep experiment: optimizer vs every static mode on one grid.

Sweeps the per-period energy budget across the interesting range (from
the keep-alive floor to past the highest saturation point) and writes a
CSV ready for plotting, plus a console digest of the region boundaries
where the optimal mix changes.
"""

import argparse
import sys

from eaopt import builtin_table1, load_catalog, sweep_budget, sweep_to_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--catalog", default="builtin:table1")
    parser.add_argument("--alpha", type=float, default=1.0)
    parser.add_argument("--start", type=float, default=0.18)
    parser.add_argument("--stop", type=float, default=10.0)
    parser.add_argument("--step", type=float, default=0.1)
    parser.add_argument("--period", type=float, default=3600.0)
    parser.add_argument("--output", default="budget_sweep.csv")
    args = parser.parse_args()

    if args.catalog == "builtin:table1":
        catalog = builtin_table1()
    else:
        catalog = load_catalog(args.catalog)

    points = sweep_budget(catalog, args.alpha, args.start, args.stop, args.step, args.period)
    with open(args.output, "w") as fh:
        fh.write(sweep_to_csv(points, catalog))

    labels = {dp.id: dp.label for dp in catalog}
    previous = None
    print(f"wrote {len(points)} rows to {args.output}")
    print("active-mix regions (budget where the support changes):")
    for pt in points:
        support = tuple(
            i for i, t in zip(pt.optimized.dp_ids, pt.optimized.times) if t > 1e-6
        )
        if support != previous:
            names = "+".join(labels[i] for i in support) if support else "off"
            print(f"  {pt.budget:8.2f} J  ->  {names}")
            previous = support
    return 0


if __name__ == "__main__":
    sys.exit(main())
