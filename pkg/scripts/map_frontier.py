#!/usr/bin/env python3
"""Map the information-vs-detection frontier for one or more attack families.

For every requested family this runs a full sweep over the detection
grid, writes a curve CSV per family into --out-dir, and prints the
comparison summary.  Results are deterministic per seed.  The default
budgets match the library defaults and take a few minutes per family;
--quick cuts them down for a smoke run.

    python scripts/map_frontier.py --out-dir results --quick
    python scripts/map_frontier.py --families full,product --grid 0:0.5:0.05
"""

import argparse
import pathlib
import time

import pingpong as pp
from pingpong import cli, files, search

FAMILY_BUILDERS = {
    "full": search.full_unitary_family,
    "product": search.product_family,
}


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--families", default="full",
                        help="comma list drawn from full,product")
    parser.add_argument("--grid", type=cli._parse_grid, default=(0.0, 0.1, 0.2, 0.3, 0.4, 0.5))
    parser.add_argument("--objectives", default="i0t,i0a,i0c")
    parser.add_argument("--mode", choices=("simplified", "bell"), default="simplified")
    parser.add_argument("--encoding", choices=("iz", "paulis"), default="iz")
    parser.add_argument("--ancilla-dim", type=int, default=2)
    parser.add_argument("--restarts", type=int, default=20)
    parser.add_argument("--budget", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--quick", action="store_true",
                        help="3 restarts x 300 evaluations, for smoke runs")
    return parser.parse_args()


def main():
    args = parse_args()
    restarts = 3 if args.quick else args.restarts
    budget = 300 if args.quick else args.budget
    objectives = tuple(args.objectives.split(","))
    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    config = pp.make_config(args.mode, encoding=args.encoding)
    for name in args.families.split(","):
        family = FAMILY_BUILDERS[name](args.ancilla_dim)
        sweep_cfg = search.SweepConfig(
            d_grid=args.grid,
            restarts=restarts,
            budget_per_restart=budget,
            seed=args.seed,
            objectives=objectives,
        )
        started = time.perf_counter()
        result = search.sweep(family, config, sweep_cfg)
        elapsed = time.perf_counter() - started
        out_path = out_dir / f"frontier_{name}_{args.mode}_{args.encoding}.csv"
        files.save_curve_csv(result.points, out_path)

        evaluations = sum(p.evaluations for p in result.points)
        print(f"== family {name} ({family.param_count} parameters) ==")
        print(f"wrote {out_path} ({len(result.points)} points, "
              f"{evaluations} evaluations, {elapsed:.1f}s)")
        print("\n".join(cli._render_summary(result.summary, objectives)))
        print()


if __name__ == "__main__":
    main()
