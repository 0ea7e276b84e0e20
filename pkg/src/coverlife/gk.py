"""Garg-Koenemann style fractional packing over sensor covers.

The column oracle (minimum-cost cover) is NP-hard, so a greedy weighted set
cover stands in for it. The epsilon <-> w correspondence lets the harness put
this algorithm on the same axis as the greedy heuristics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .greedy import SolveResult
from .model import TOL, CoverageMatrix, Schedule, SensorCover, minimalize_cover


class NoSolution(ValueError):
    pass


EPS_LO = 1e-9
EPS_HI = 10.0


def w_for_epsilon(epsilon: float, n: int) -> float:
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if (1 + epsilon) * n <= 1:
        raise ValueError(f"(1 + epsilon) * n must exceed 1, got {(1 + epsilon) * n}")
    return epsilon * math.log1p(epsilon) / math.log((1 + epsilon) * n)


def epsilon_for_w(w: float, n: int, tol: float = 1e-10) -> float:
    """Invert :func:`w_for_epsilon` by bisection on [1e-9, 10]."""
    if not 0 < w <= 1:
        raise ValueError(f"w must lie in (0, 1], got {w}")
    lo, hi = EPS_LO, EPS_HI
    if w_for_epsilon(hi, n) < w:
        raise NoSolution(f"w={w} exceeds the largest reachable value {w_for_epsilon(hi, n):.6g} for n={n}")
    if w_for_epsilon(lo, n) >= w:
        return lo
    while hi - lo > 1e-15 * hi:
        mid = 0.5 * (lo + hi)
        if w_for_epsilon(mid, n) < w:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class GkConfig:
    epsilon: float
    tolerance: float = TOL

    def __post_init__(self):
        # epsilon >= 1 is allowed: large w maps there, and the scheme stays feasible
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


def min_cost_cover(M: CoverageMatrix, costs: Sequence[float]) -> SensorCover:
    """Greedy weighted set cover: cheapest cost per newly covered target first."""
    uncovered = M.full
    chosen = []
    while uncovered:
        best, best_ratio = -1, math.inf
        for i, row in enumerate(M.rows):
            gain = (row & uncovered).bit_count()
            if gain and costs[i] / gain < best_ratio:
                best, best_ratio = i, costs[i] / gain
        chosen.append(best)
        uncovered &= ~M.rows[best]
    return minimalize_cover(M, chosen)


def run_gk(M: CoverageMatrix, battery: Sequence[float], config: GkConfig) -> SolveResult:
    eps = config.epsilon
    n = M.n
    b = [float(x) for x in battery]
    usable = [i for i in range(n) if b[i] > config.tolerance]
    if M.union(usable) != M.full:
        return SolveResult(Schedule(), 0, tuple(b))

    log_delta = math.log1p(eps) - math.log((1 + eps) * n) / eps
    # phases = log_{1+eps}((1+eps)/delta); kept in log space, delta underflows for small eps
    phases = (math.log1p(eps) - log_delta) / math.log1p(eps)
    cap = n * math.ceil(phases) + 1

    # lengths scaled by 1/delta so tiny deltas stay representable
    y = [1.0 / b[i] if b[i] > config.tolerance else math.inf for i in range(n)]
    if -log_delta > 700:
        raise ValueError(f"epsilon={eps} is too small for n={n}: the scheme's start length underflows")
    threshold = math.exp(-log_delta)

    raw: dict[SensorCover, float] = {}
    order: list[SensorCover] = []
    iterations = 0
    while iterations < cap:
        cover = min_cost_cover(M, y)
        if sum(y[i] for i in cover) >= threshold:
            break
        iterations += 1
        delta_x = min(b[i] for i in cover)
        if cover not in raw:
            raw[cover] = 0.0
            order.append(cover)
        raw[cover] += delta_x
        for i in cover:
            y[i] *= 1 + eps * delta_x / b[i]

    usage = [0.0] * n
    for cover, x in raw.items():
        for i in cover:
            usage[i] += x
    scale = phases
    # the cover-length stopping rule only bounds usage by this factor when b_i <= 1
    worst = max((usage[i] / b[i] for i in usable), default=0.0)
    if worst > scale:
        scale = worst
    entries = tuple((c, raw[c] / scale) for c in order if raw[c] > 0)
    residual = tuple(b[i] - usage[i] / scale for i in range(n))
    return SolveResult(Schedule(entries), iterations, residual)
