"""Experiment grids over generated instances, CSV records and plot-ready series."""

from __future__ import annotations

import csv
import io
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from statistics import fmean
from typing import Sequence

from .gk import GkConfig, epsilon_for_w, run_gk
from .greedy import Generator, GreedyConfig, SolveResult, run_greedy
from .instance_gen import GenConfig, derive_seed, generate
from .model import CoverageMatrix, build_coverage_matrix, total_lifetime, upper_bound, validate_schedule

log = logging.getLogger(__name__)

ALGORITHMS = ("hef", "cardei", "bgop", "naive", "gk")
W_GRID = (1.0, 0.5, 0.25, 0.025, 0.01, 0.002)
# published (w, epsilon) pairs used for the GK comparison
GK_PAIRS = {0.002: 0.104, 0.01: 0.25}
HARNESS_RESAMPLES = 200_000

CSV_HEADER = (
    "algorithm",
    "w",
    "epsilon",
    "n_sensors",
    "n_targets",
    "seed",
    "lifetime",
    "upper_bound",
    "gap_pct",
    "covers_generated",
    "runtime_ms",
)


class ScheduleInvalid(RuntimeError):
    pass


def solve(algorithm: str, M: CoverageMatrix, battery: Sequence[float], w: float = 1.0, epsilon: float | None = None) -> SolveResult:
    """Single entry point shared by the CLI and the experiment runner.

    ``naive`` always runs at w = 1. ``gk`` uses ``epsilon`` when given,
    otherwise the epsilon that corresponds to ``w`` for this sensor count.
    """
    if algorithm == "gk":
        eps = epsilon if epsilon is not None else epsilon_for_w(w, M.n)
        return run_gk(M, battery, GkConfig(eps))
    if algorithm == "naive":
        w = 1.0
    return run_greedy(M, battery, GreedyConfig(w, Generator(algorithm)))


@dataclass(frozen=True)
class RunRecord:
    algorithm: str
    w: float
    epsilon: float | None
    n_sensors: int
    n_targets: int
    seed: int
    lifetime: float
    upper_bound: float
    covers_generated: int
    runtime_ms: float

    @property
    def gap_pct(self) -> float:
        return 100.0 * (self.upper_bound - self.lifetime) / self.upper_bound

    def row(self) -> list[str]:
        f = "{:.6f}".format
        return [
            self.algorithm,
            f(self.w),
            "" if self.epsilon is None else f(self.epsilon),
            str(self.n_sensors),
            str(self.n_targets),
            str(self.seed),
            f(self.lifetime),
            f(self.upper_bound),
            f(self.gap_pct),
            str(self.covers_generated),
            f(self.runtime_ms),
        ]


@dataclass(frozen=True)
class Aggregate:
    algorithm: str
    w: float
    n_sensors: int
    n_targets: int
    reps: int
    mean_lifetime: float
    min_lifetime: float
    max_lifetime: float
    mean_upper_bound: float
    mean_gap_pct: float


@dataclass(frozen=True)
class ExperimentSpec:
    exp_id: int
    algorithms: tuple[str, ...]
    w_grid: tuple[float, ...]
    sensor_counts: tuple[int, ...]
    target_counts: tuple[int, ...]
    replications: int = 15
    base_seed: int = 0
    out: Path | None = None
    gk_epsilons: dict = field(default_factory=lambda: dict(GK_PAIRS))
    range: float = 70.0
    sensor_area: float = 1000.0
    target_area: float = 800.0
    max_resamples: int = HARNESS_RESAMPLES
    timing: bool = True

    def __post_init__(self):
        if not (self.algorithms and self.w_grid and self.sensor_counts and self.target_counts):
            raise ValueError("experiment grids must be non-empty")
        if self.replications < 1:
            raise ValueError("replications must be at least 1")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")

    @classmethod
    def default(cls, exp_id: int, **overrides) -> "ExperimentSpec":
        targets = tuple(range(20, 91, 10))
        if exp_id == 1:
            base = cls(1, ("cardei", "hef"), W_GRID, (150,), targets)
        elif exp_id == 2:
            base = cls(2, ("cardei", "hef", "gk"), tuple(GK_PAIRS), (150,), targets)
        elif exp_id == 3:
            base = cls(3, ("hef", "cardei", "bgop"), (1.0,), (150,), targets)
        elif exp_id == 4:
            base = cls(4, ("hef", "cardei", "bgop"), (1.0,), tuple(range(20, 151, 10)), (25,))
        else:
            raise ValueError(f"experiment id must be 1..4, got {exp_id}")
        return replace(base, **overrides)

    @property
    def label(self) -> str:
        return f"exp{self.exp_id}"

    @property
    def x_axis(self) -> str:
        return "n_sensors" if len(self.sensor_counts) > 1 else "n_targets"

    def epsilon_for(self, algorithm: str, w: float, n: int) -> float | None:
        if algorithm != "gk":
            return None
        if w in self.gk_epsilons:
            return self.gk_epsilons[w]
        return epsilon_for_w(w, n)


def _threads() -> int:
    env = os.environ.get("COVERLIFE_THREADS")
    if env:
        return max(1, int(env))
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _run_cell(spec: ExperimentSpec, ni: int, mi: int, rep: int) -> list[tuple[tuple, RunRecord]]:
    n, m = spec.sensor_counts[ni], spec.target_counts[mi]
    seed = derive_seed(spec.base_seed, ni, mi, rep)
    inst = generate(
        GenConfig(n, m, seed, spec.sensor_area, spec.target_area, spec.range, spec.max_resamples)
    )
    M = build_coverage_matrix(inst)
    ub = upper_bound(M, inst.battery)
    out = []
    for ai, alg in enumerate(spec.algorithms):
        for wi, w in enumerate(spec.w_grid):
            eps = spec.epsilon_for(alg, w, n)
            t0 = time.perf_counter()
            res = solve(alg, M, inst.battery, w, eps)
            elapsed = (time.perf_counter() - t0) * 1000.0 if spec.timing else 0.0
            report = validate_schedule(M, inst.battery, res.schedule)
            if not report.ok:
                raise ScheduleInvalid(
                    f"{alg} w={w} on n={n} m={m} seed={seed} produced an invalid schedule: {report.problems()[:5]}"
                )
            rec = RunRecord(alg, w, eps, n, m, seed, total_lifetime(res.schedule), ub, res.covers_generated, elapsed)
            out.append(((ni, mi, ai, wi, rep), rec))
    return out


def run_experiment(spec: ExperimentSpec) -> tuple[list[RunRecord], list[Aggregate]]:
    jobs = [
        (ni, mi, rep)
        for ni in range(len(spec.sensor_counts))
        for mi in range(len(spec.target_counts))
        for rep in range(spec.replications)
    ]
    threads = min(_threads(), len(jobs))
    log.info("%s: %d instances on %d thread(s)", spec.label, len(jobs), threads)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            chunks = list(pool.map(lambda j: _run_cell(spec, *j), jobs))
    else:
        chunks = [_run_cell(spec, *j) for j in jobs]
    keyed = sorted((item for chunk in chunks for item in chunk), key=lambda kv: kv[0])
    records = [rec for _, rec in keyed]
    return records, aggregate(records)


def aggregate(records: Sequence[RunRecord]) -> list[Aggregate]:
    groups: dict[tuple, list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.algorithm, r.w, r.n_sensors, r.n_targets), []).append(r)
    out = []
    for (alg, w, n, m), rs in groups.items():
        lifetimes = [r.lifetime for r in rs]
        out.append(
            Aggregate(
                alg,
                w,
                n,
                m,
                len(rs),
                fmean(lifetimes),
                min(lifetimes),
                max(lifetimes),
                fmean(r.upper_bound for r in rs),
                fmean(r.gap_pct for r in rs),
            )
        )
    return out


def spread_pct(low: float, high: float, mean: float) -> float:
    """Spread of per-w averages relative to their overall average, in percent."""
    return (high - low) / mean * 100.0


def spread_table(aggregates: Sequence[Aggregate]) -> list[dict]:
    """One row per (algorithm, cell): mean lifetime per w, then min, max and spread."""
    rows: dict[tuple, dict] = {}
    for a in aggregates:
        row = rows.setdefault((a.algorithm, a.n_sensors, a.n_targets), {"algorithm": a.algorithm, "n_sensors": a.n_sensors, "n_targets": a.n_targets, "by_w": {}})
        row["by_w"][a.w] = a.mean_lifetime
    for row in rows.values():
        vals = list(row["by_w"].values())
        row["A"], row["B"] = min(vals), max(vals)
        row["C"] = spread_pct(row["A"], row["B"], fmean(vals))
    return list(rows.values())


def format_csv(records: Sequence[RunRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(r.row())
    return buf.getvalue()


def emit_csv(records: Sequence[RunRecord], path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_csv(records))
    return path


def emit_summary(aggregates: Sequence[Aggregate], path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = ("algorithm", "w", "n_sensors", "n_targets", "reps", "mean_lifetime", "min_lifetime", "max_lifetime", "mean_upper_bound", "mean_gap_pct")
    writer.writerow(cols)
    for a in aggregates:
        writer.writerow([v if isinstance(v, (str, int)) else f"{v:.6f}" for v in (getattr(a, c) for c in cols)])
    path.write_text(buf.getvalue())
    return path


def plot_series(aggregates: Sequence[Aggregate], x_axis: str) -> dict[str, list[tuple[int, float]]]:
    """Series name -> sorted (x, mean lifetime) points, plus an ``upperbound`` series."""
    series: dict[str, dict[int, float]] = {}
    ub: dict[int, list[float]] = {}
    for a in aggregates:
        x = getattr(a, x_axis)
        series.setdefault(f"{a.algorithm}_{a.w:g}", {})[x] = a.mean_lifetime
        ub.setdefault(x, []).append(a.mean_upper_bound)
    out = {name: sorted(pts.items()) for name, pts in series.items()}
    # every algorithm saw the same instances, so the per-x bound is shared
    out["upperbound"] = sorted((x, fmean(v)) for x, v in ub.items())
    return out


def emit_plot_data(aggregates: Sequence[Aggregate], out_dir, label: str, x_axis: str = "n_targets") -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, pts in plot_series(aggregates, x_axis).items():
        p = out_dir / f"{label}_{name}.dat"
        p.write_text("".join(f"{x} {y:.6f}\n" for x, y in pts))
        paths.append(p)
    return paths


def write_outputs(spec: ExperimentSpec, records, aggregates, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    paths = [
        emit_csv(records, out_dir / f"{spec.label}.csv"),
        emit_summary(aggregates, out_dir / f"{spec.label}_summary.csv"),
    ]
    paths += emit_plot_data(aggregates, out_dir, spec.label, spec.x_axis)
    return paths
