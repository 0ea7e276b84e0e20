"""Run the experiment grids and print a per-cell summary.

    python3 scripts/run_experiments.py --ids 1 2 3 --out results
    python3 scripts/run_experiments.py --ids 4 --sensor-counts 80 100 120 150
"""

import argparse
import time
from pathlib import Path

from coverlife.harness import ExperimentSpec, run_experiment, spread_table, write_outputs
from coverlife.instance_gen import GenerationFailed


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--ids", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--reps", type=int, default=15)
    ap.add_argument("--range", type=float, default=None, help="override the sensing range")
    ap.add_argument("--sensor-counts", type=int, nargs="+", default=None)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()

    for exp_id in args.ids:
        overrides = {"base_seed": args.seed, "replications": args.reps}
        if args.range is not None:
            overrides["range"] = args.range
        if args.sensor_counts:
            overrides["sensor_counts"] = tuple(args.sensor_counts)
        spec = ExperimentSpec.default(exp_id, **overrides)
        t0 = time.perf_counter()
        try:
            records, aggregates = run_experiment(spec)
        except GenerationFailed as exc:
            print(f"{spec.label}: {exc}")
            continue
        write_outputs(spec, records, aggregates, args.out)
        print(f"{spec.label}: {len(records)} runs in {time.perf_counter() - t0:.1f}s -> {args.out}")
        print(f"  {'alg':>7} {'w':>6} {'n':>4} {'m':>3} {'mean':>9} {'bound':>9} {'gap%':>6}")
        for a in aggregates:
            print(f"  {a.algorithm:>7} {a.w:>6g} {a.n_sensors:>4} {a.n_targets:>3} "
                  f"{a.mean_lifetime:>9.4f} {a.mean_upper_bound:>9.4f} {a.mean_gap_pct:>6.2f}")
        if len(spec.w_grid) > 1:
            print("  spread across w (A = spread %, B = max - min, C = mean):")
            for row in spread_table(aggregates):
                print("   ", "  ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}" for k, v in row.items()))


if __name__ == "__main__":
    main()
