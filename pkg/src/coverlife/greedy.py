"""Generic greedy scheduling loop and its cover generators.

Each generator has the signature ``gen(M, residual, live) -> SensorCover | None``
and returns None once the live sensors can no longer cover every target.
Ties are always broken deterministically, ending with the lowest sensor index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .model import TOL, CoverageMatrix, Schedule, SensorCover, minimalize_cover, target_weights


def _exhausted(M: CoverageMatrix, live: Sequence[int]) -> bool:
    return M.union(live) != M.full


def hef_generate_cover(M: CoverageMatrix, residual: Sequence[float], live: Sequence[int]) -> SensorCover | None:
    """High-energy-first: repeatedly take the fullest-battery sensor that still helps."""
    if _exhausted(M, live):
        return None
    order = sorted(live, key=lambda i: (-residual[i], i))
    uncovered = M.full
    chosen = []
    # residuals are fixed while a cover is built, so one pass in priority order suffices
    for i in order:
        if M.rows[i] & uncovered:
            chosen.append(i)
            uncovered &= ~M.rows[i]
            if not uncovered:
                break
    return minimalize_cover(M, chosen)


def first_fit_generate_cover(M: CoverageMatrix, residual: Sequence[float], live: Sequence[int]) -> SensorCover | None:
    """Lowest-index live sensor covering something new; the plain naive greedy."""
    if _exhausted(M, live):
        return None
    uncovered = M.full
    chosen = []
    for i in sorted(live):
        if M.rows[i] & uncovered:
            chosen.append(i)
            uncovered &= ~M.rows[i]
            if not uncovered:
                break
    return minimalize_cover(M, chosen)


def cardei_generate_cover(M: CoverageMatrix, residual: Sequence[float], live: Sequence[int]) -> SensorCover | None:
    """Critical-target greedy.

    Encodes two rules: the next sensor must cover the critical target (the
    uncovered target with the least live battery around it), and among those
    the sensor covering the most uncovered targets wins.
    """
    if _exhausted(M, live):
        return None
    live_set = set(live)
    live_res = [residual[i] if i in live_set else 0.0 for i in range(M.n)]
    weights = target_weights(M, live_res)
    by_weight = sorted(range(M.m), key=lambda j: (weights[j], j))
    uncovered = M.full
    chosen = []
    k = 0
    while uncovered:
        while not uncovered >> by_weight[k] & 1:
            k += 1
        crit = by_weight[k]
        best = min(
            (i for i in M.coverers[crit] if i in live_set),
            key=lambda i: (-(M.rows[i] & uncovered).bit_count(), -residual[i], i),
        )
        chosen.append(best)
        uncovered &= ~M.rows[best]
    return minimalize_cover(M, chosen)


def bgop_generate_cover(M: CoverageMatrix, residual: Sequence[float], live: Sequence[int]) -> SensorCover | None:
    """Best/Good/Ok/Poor class greedy.

    Coverage quality is graded on two questions: does the sensor reach a
    critical uncovered target, and does it avoid already-covered targets.
    Best = both, Good = critical only, Ok = no overlap only, Poor = neither.
    The first non-empty class supplies the next sensor.
    """
    if _exhausted(M, live):
        return None
    live_set = set(live)
    live_res = [residual[i] if i in live_set else 0.0 for i in range(M.n)]
    weights = target_weights(M, live_res)
    uncovered = M.full
    chosen = []
    while uncovered:
        open_targets = [j for j in range(M.m) if uncovered >> j & 1]
        low = min(weights[j] for j in open_targets)
        critical = 0
        for j in open_targets:
            if weights[j] <= low + TOL:
                critical |= 1 << j
        covered = M.full & ~uncovered

        def grade(i):
            row = M.rows[i]
            hits_critical = bool(row & critical)
            overlaps = bool(row & covered)
            if hits_critical:
                return 0 if not overlaps else 1
            return 2 if not overlaps else 3

        cands = [i for i in live if M.rows[i] & uncovered]
        best = min(cands, key=lambda i: (grade(i), -(M.rows[i] & uncovered).bit_count(), -residual[i], i))
        chosen.append(best)
        uncovered &= ~M.rows[best]
    return minimalize_cover(M, chosen)


class Generator(str, Enum):
    HEF = "hef"
    CARDEI = "cardei"
    BGOP = "bgop"
    NAIVE = "naive"


GENERATORS: dict[Generator, Callable] = {
    Generator.HEF: hef_generate_cover,
    Generator.CARDEI: cardei_generate_cover,
    Generator.BGOP: bgop_generate_cover,
    Generator.NAIVE: first_fit_generate_cover,
}


@dataclass(frozen=True)
class GreedyConfig:
    w: float = 1.0
    generator: Generator = Generator.HEF
    tolerance: float = TOL

    def __post_init__(self):
        if not 0 < self.w <= 1:
            raise ValueError(f"w must lie in (0, 1], got {self.w}")
        object.__setattr__(self, "generator", Generator(self.generator))


@dataclass(frozen=True)
class SolveResult:
    schedule: Schedule
    covers_generated: int
    residual: tuple[float, ...]


def run_greedy(M: CoverageMatrix, battery: Sequence[float], config: GreedyConfig) -> SolveResult:
    """Build covers until the live sensors stop covering all targets.

    Each generated cover runs for ``min(w, weakest member's residual)``;
    consecutive repeats of a cover are merged into one schedule entry.
    """
    gen = GENERATORS[config.generator]
    tol = config.tolerance
    residual = [float(b) for b in battery]
    live = [i for i in range(M.n) if residual[i] > tol]
    entries: list[list] = []
    generated = 0
    cap = M.n * math.ceil(max([1.0, *residual]) / config.w) + M.n
    while live and generated < cap:
        cover = gen(M, residual, live)
        if cover is None:
            break
        generated += 1
        x = min(config.w, min(residual[i] for i in cover))
        if entries and entries[-1][0] == cover:
            entries[-1][1] += x
        else:
            entries.append([cover, x])
        drained = False
        for i in cover:
            residual[i] -= x
            drained |= residual[i] <= tol
        if drained:
            live = [i for i in live if residual[i] > tol]
    return SolveResult(Schedule(tuple((c, x) for c, x in entries)), generated, tuple(residual))
