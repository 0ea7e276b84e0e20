"""Exact optimum for small instances: every minimal cover plus a dense simplex solve."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import CoverageMatrix, Schedule, SensorCover

DEFAULT_LIMIT = 100_000
LP_TOL = 1e-7


class TooManyCovers(RuntimeError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"more than {limit} minimal covers; instance too large for the exact oracle")


@dataclass(frozen=True)
class CoverSet:
    covers: tuple[SensorCover, ...]

    def __len__(self):
        return len(self.covers)

    def __iter__(self):
        return iter(self.covers)


@dataclass(frozen=True)
class LpSolution:
    objective: float
    weights: tuple[float, ...]
    covers: tuple[SensorCover, ...] = ()

    def schedule(self, eps: float = 0.0) -> Schedule:
        return Schedule(tuple((c, x) for c, x in zip(self.covers, self.weights) if x > eps))


def enumerate_minimal_covers(M: CoverageMatrix, limit: int = DEFAULT_LIMIT) -> CoverSet:
    """Depth-first search branching on the lowest-index uncovered target.

    A partial set in which some member is already redundant can only grow into
    non-minimal covers, so that branch is cut.
    """
    found: set[tuple[int, ...]] = set()
    full = M.full
    rows = M.rows

    def redundant(chosen):
        for i in chosen:
            others = 0
            for k in chosen:
                if k != i:
                    others |= rows[k]
            if rows[i] & ~others == 0:
                return True
        return False

    def dfs(chosen, covered):
        if covered == full:
            key = tuple(sorted(chosen))
            if key not in found:
                found.add(key)
                if len(found) > limit:
                    raise TooManyCovers(limit)
            return
        low = (~covered & full) & -(~covered & full)
        j = low.bit_length() - 1
        for i in M.coverers[j]:
            nxt = chosen + [i]
            if redundant(nxt):
                continue
            dfs(nxt, covered | rows[i])

    dfs([], 0)
    return CoverSet(tuple(SensorCover(c) for c in sorted(found)))


def simplex_max(A: np.ndarray, b: np.ndarray, c: np.ndarray, tol: float = 1e-12, max_iter: int = 100_000):
    """Maximize c.x subject to A x <= b, x >= 0, with b >= 0.

    Dense tableau, slack basis start, Bland's rule for both entering and
    leaving choices. Returns ``(objective, x)``.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    rows, cols = A.shape
    if np.any(b < 0):
        raise ValueError("simplex_max needs b >= 0 (origin must be feasible)")
    T = np.zeros((rows + 1, cols + rows + 1))
    T[:rows, :cols] = A
    T[:rows, cols : cols + rows] = np.eye(rows)
    T[:rows, -1] = b
    T[-1, :cols] = -c
    basis = list(range(cols, cols + rows))
    for _ in range(max_iter):
        entering = np.flatnonzero(T[-1, :-1] < -tol)
        if entering.size == 0:
            break
        e = int(entering[0])
        col = T[:rows, e]
        pos = np.flatnonzero(col > tol)
        if pos.size == 0:
            raise ValueError("LP is unbounded")
        ratios = T[pos, -1] / col[pos]
        best = ratios.min()
        ties = pos[ratios <= best + tol * max(1.0, abs(best))]
        r = int(min(ties, key=lambda k: basis[k]))
        T[r] /= T[r, e]
        for k in range(rows + 1):
            if k != r and T[k, e] != 0.0:
                T[k] -= T[k, e] * T[r]
        basis[r] = e
    else:
        raise RuntimeError("simplex iteration limit reached")
    x = np.zeros(cols)
    for r, v in enumerate(basis):
        if v < cols:
            x[v] = max(T[r, -1], 0.0)
    return float(c @ x), x


def lp_optimal_lifetime(covers: CoverSet | Sequence[SensorCover], battery: Sequence[float]) -> LpSolution:
    covers = tuple(covers)
    if not covers:
        raise ValueError("need at least one cover")
    n = len(battery)
    C = np.zeros((n, len(covers)))
    for p, cov in enumerate(covers):
        C[list(cov), p] = 1.0
    objective, x = simplex_max(C, np.asarray(battery, dtype=float), np.ones(len(covers)))
    # certify against the constraints we were asked to respect
    slack = np.asarray(battery) - C @ x
    if slack.min() < -LP_TOL:
        raise RuntimeError(f"simplex returned an infeasible point (violation {-slack.min():.3g})")
    return LpSolution(objective, tuple(x.tolist()), covers)


def exact_optimum(M: CoverageMatrix, battery: Sequence[float], limit: int = DEFAULT_LIMIT) -> LpSolution:
    return lp_optimal_lifetime(enumerate_minimal_covers(M, limit), battery)
