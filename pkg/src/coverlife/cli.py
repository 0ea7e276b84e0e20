"""Command line entry point: ``coverlife {gen,solve,oracle,exp,validate}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .gk import NoSolution
from .harness import ALGORITHMS, ExperimentSpec, run_experiment, solve, spread_table, write_outputs
from .instance_gen import GenConfig, GenerationFailed, generate
from .model import InfeasibleInstance, Instance, Schedule, build_coverage_matrix, total_lifetime, upper_bound, validate_schedule
from .oracle import DEFAULT_LIMIT, TooManyCovers, exact_optimum

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coverlife", description="Lifetime-maximizing sensor cover schedules.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a random instance file")
    g.add_argument("--n", type=int, required=True, help="sensor count")
    g.add_argument("--m", type=int, required=True, help="target count")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--range", type=float, default=70.0)
    g.add_argument("--sensor-area", type=float, default=1000.0)
    g.add_argument("--target-area", type=float, default=800.0)
    g.add_argument("--max-resamples", type=int, default=1000)
    g.add_argument("--out", type=Path, required=True)

    s = sub.add_parser("solve", help="run one algorithm on an instance file")
    s.add_argument("--instance", type=Path, required=True)
    s.add_argument("--alg", choices=ALGORITHMS, default="hef")
    s.add_argument("--w", type=float, default=1.0)
    s.add_argument("--epsilon", type=float, default=None, help="gk only; defaults to the value matching --w")
    s.add_argument("--schedule-out", type=Path, default=None)

    o = sub.add_parser("oracle", help="exact LP optimum over all minimal covers")
    o.add_argument("--instance", type=Path, required=True)
    o.add_argument("--limit", type=int, default=DEFAULT_LIMIT)

    e = sub.add_parser("exp", help="run one of the four experiment grids")
    e.add_argument("--id", type=int, required=True, choices=(1, 2, 3, 4))
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--reps", type=int, default=15)
    e.add_argument("--out", type=Path, default=Path("results"))
    e.add_argument("--no-timing", action="store_true", help="write 0 runtimes so output is byte-reproducible")

    v = sub.add_parser("validate", help="check a schedule file against an instance")
    v.add_argument("--instance", type=Path, required=True)
    v.add_argument("--schedule", type=Path, required=True)
    return p


def _load(path: Path):
    inst = Instance.load(path)
    return inst, build_coverage_matrix(inst)


def cmd_gen(args) -> int:
    inst = generate(
        GenConfig(args.n, args.m, args.seed, args.sensor_area, args.target_area, args.range, args.max_resamples)
    )
    inst.dump(args.out)
    print(f"wrote {args.out} (n={inst.n}, m={inst.m})")
    return EXIT_OK


def cmd_solve(args) -> int:
    inst, M = _load(args.instance)
    res = solve(args.alg, M, inst.battery, args.w, args.epsilon)
    report = validate_schedule(M, inst.battery, res.schedule)
    life = total_lifetime(res.schedule)
    ub = upper_bound(M, inst.battery)
    print(f"lifetime {life:.6f}")
    print(f"upper_bound {ub:.6f}")
    print(f"gap_pct {100 * (ub - life) / ub:.6f}")
    print(f"covers {len(res.schedule)} (generated {res.covers_generated})")
    if args.schedule_out:
        args.schedule_out.write_text(json.dumps(res.schedule.to_dict(), indent=1) + "\n")
    return EXIT_OK if report.ok else EXIT_INFEASIBLE


def cmd_oracle(args) -> int:
    inst, M = _load(args.instance)
    sol = exact_optimum(M, inst.battery, args.limit)
    print(f"optimum {sol.objective:.6f}")
    print(f"covers {len(sol.covers)} (positive weight {sum(x > 1e-12 for x in sol.weights)})")
    print(f"upper_bound {upper_bound(M, inst.battery):.6f}")
    return EXIT_OK


def cmd_exp(args) -> int:
    spec = ExperimentSpec.default(args.id, replications=args.reps, base_seed=args.seed, out=args.out, timing=not args.no_timing)
    records, aggregates = run_experiment(spec)
    paths = write_outputs(spec, records, aggregates, args.out)
    for row in spread_table(aggregates):
        means = " ".join(f"w={w:g}:{v:.4f}" for w, v in row["by_w"].items())
        print(f"{row['algorithm']:>7} n={row['n_sensors']:<4} m={row['n_targets']:<3} {means}  A={row['A']:.4f} B={row['B']:.4f} C={row['C']:.2f}%")
    print(f"{len(records)} records, {len(paths)} files in {args.out}")
    return EXIT_OK


def cmd_validate(args) -> int:
    inst, M = _load(args.instance)
    sched = Schedule.from_dict(json.loads(args.schedule.read_text()))
    report = validate_schedule(M, inst.battery, sched)
    print(f"{'PASS' if report.ok else 'FAIL'} total {report.total:.6f}")
    for line in report.problems():
        print(f"  {line}")
    return EXIT_OK if report.ok else EXIT_INFEASIBLE


COMMANDS = {"gen": cmd_gen, "solve": cmd_solve, "oracle": cmd_oracle, "exp": cmd_exp, "validate": cmd_validate}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.cmd](args)
    except (InfeasibleInstance, GenerationFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, KeyError, OSError, NoSolution, TooManyCovers, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
