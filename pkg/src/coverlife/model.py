"""Core problem types for lifetime-maximizing target coverage.

Sensor rows of the coverage matrix are also kept as Python-int bitmasks
(bit ``j`` set iff the sensor covers target ``j``); every cover predicate
below works on those masks, which keeps the greedy loops cheap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

TOL = 1e-9

Point = tuple[float, float]


class InfeasibleInstance(ValueError):
    """Some target is covered by no sensor, so no sensor cover exists."""

    def __init__(self, targets: Sequence[int]):
        self.targets = list(targets)
        super().__init__(f"targets not covered by any sensor: {self.targets}")


@dataclass(frozen=True)
class Instance:
    sensors: tuple[Point, ...]
    targets: tuple[Point, ...]
    range: float
    battery: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "sensors", tuple((float(x), float(y)) for x, y in self.sensors))
        object.__setattr__(self, "targets", tuple((float(x), float(y)) for x, y in self.targets))
        object.__setattr__(self, "battery", tuple(float(b) for b in self.battery))
        object.__setattr__(self, "range", float(self.range))
        if not self.sensors or not self.targets:
            raise ValueError("need at least one sensor and one target")
        if len(self.battery) != len(self.sensors):
            raise ValueError(f"battery has {len(self.battery)} entries for {len(self.sensors)} sensors")
        if not self.range > 0:
            raise ValueError(f"range must be positive, got {self.range}")
        if any(b < 0 for b in self.battery):
            raise ValueError("battery entries must be non-negative")

    @property
    def n(self) -> int:
        return len(self.sensors)

    @property
    def m(self) -> int:
        return len(self.targets)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "range": self.range,
            "sensors": [list(p) for p in self.sensors],
            "targets": [list(p) for p in self.targets],
            "battery": list(self.battery),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Instance":
        inst = cls(
            sensors=tuple(tuple(p) for p in d["sensors"]),
            targets=tuple(tuple(p) for p in d["targets"]),
            range=d["range"],
            battery=tuple(d["battery"]),
        )
        if "n" in d and d["n"] != inst.n:
            raise ValueError(f"n={d['n']} but {inst.n} sensors listed")
        if "m" in d and d["m"] != inst.m:
            raise ValueError(f"m={d['m']} but {inst.m} targets listed")
        return inst

    def dump(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1) + "\n")

    @classmethod
    def load(cls, path) -> "Instance":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True, eq=False)
class CoverageMatrix:
    """Boolean n x m sensor-target incidence. Construction enforces feasibility."""

    bits: np.ndarray
    rows: tuple[int, ...] = field(init=False, repr=False)
    coverers: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    row_targets: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        bits = np.array(self.bits, dtype=bool)
        if bits.ndim != 2 or 0 in bits.shape:
            raise ValueError(f"coverage matrix must be a non-empty 2-D grid, got shape {bits.shape}")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)
        uncovered = np.flatnonzero(~bits.any(axis=0))
        if uncovered.size:
            raise InfeasibleInstance(uncovered.tolist())
        rows = tuple(sum(1 << int(j) for j in np.flatnonzero(r)) for r in bits)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "coverers", tuple(tuple(np.flatnonzero(c).tolist()) for c in bits.T))
        object.__setattr__(self, "row_targets", tuple(tuple(np.flatnonzero(r).tolist()) for r in bits))

    @classmethod
    def from_rows(cls, rows: Sequence[Iterable[int]], m: int) -> "CoverageMatrix":
        """Build from per-sensor target lists, e.g. ``[{0, 1}, {1, 2}]``."""
        bits = np.zeros((len(rows), m), dtype=bool)
        for i, targets in enumerate(rows):
            for j in targets:
                bits[i, j] = True
        return cls(bits)

    @property
    def n(self) -> int:
        return self.bits.shape[0]

    @property
    def m(self) -> int:
        return self.bits.shape[1]

    @property
    def full(self) -> int:
        return (1 << self.m) - 1

    def union(self, sensors: Iterable[int]) -> int:
        mask = 0
        for i in sensors:
            mask |= self.rows[i]
        return mask

    def __eq__(self, other):
        return isinstance(other, CoverageMatrix) and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.bits.shape, self.bits.tobytes()))


@dataclass(frozen=True, order=True)
class SensorCover:
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(int(i) for i in self.members)))
        if not members:
            raise ValueError("a sensor cover needs at least one sensor")
        if members[0] < 0:
            raise ValueError(f"negative sensor index {members[0]}")
        object.__setattr__(self, "members", members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, i):
        return i in self.members


@dataclass(frozen=True)
class Schedule:
    """Ordered (cover, lifetime) pairs."""

    entries: tuple[tuple[SensorCover, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "entries", tuple((c if isinstance(c, SensorCover) else SensorCover(c), float(x)) for c, x in self.entries)
        )

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def covers(self) -> list[SensorCover]:
        return [c for c, _ in self.entries]

    def to_dict(self) -> dict:
        return {"entries": [{"cover": list(c.members), "lifetime": x} for c, x in self.entries]}

    @classmethod
    def from_dict(cls, d: dict) -> "Schedule":
        return cls(tuple((SensorCover(tuple(e["cover"])), e["lifetime"]) for e in d["entries"]))


@dataclass
class ValidationReport:
    ok: bool
    total: float
    cover_ok: list[bool]
    lifetime_ok: list[bool]
    usage: list[float]
    sensor_ok: list[bool]

    def problems(self) -> list[str]:
        out = [f"entry {k}: not a cover" for k, ok in enumerate(self.cover_ok) if not ok]
        out += [f"entry {k}: non-positive lifetime" for k, ok in enumerate(self.lifetime_ok) if not ok]
        out += [f"sensor {i}: usage {self.usage[i]:.9g} exceeds battery" for i, ok in enumerate(self.sensor_ok) if not ok]
        return out


def _distance_bits(sensors: np.ndarray, targets: np.ndarray, rng: float) -> np.ndarray:
    d = sensors[:, None, :] - targets[None, :, :]
    # squared distances: no sqrt rounding right at the boundary
    return (d * d).sum(axis=2) < rng * rng


def build_coverage_matrix(instance: Instance) -> CoverageMatrix:
    """Sensor ``i`` covers target ``j`` iff their distance is strictly below the range."""
    bits = _distance_bits(np.asarray(instance.sensors), np.asarray(instance.targets), instance.range)
    return CoverageMatrix(bits)


def is_cover(M: CoverageMatrix, S: Iterable[int]) -> bool:
    return M.union(S) == M.full


def minimalize_cover(M: CoverageMatrix, S: Iterable[int]) -> SensorCover:
    """Drop redundant sensors one at a time, trying them in ascending index order."""
    kept = sorted(set(S))
    count = [0] * M.m
    for i in kept:
        for j in M.row_targets[i]:
            count[j] += 1
    out = []
    for i in kept:
        targets = M.row_targets[i]
        if all(count[j] > 1 for j in targets):
            for j in targets:
                count[j] -= 1
        else:
            out.append(i)
    return SensorCover(tuple(out))


def is_minimal(M: CoverageMatrix, S: Iterable[int]) -> bool:
    S = list(S)
    if not is_cover(M, S):
        return False
    return all(not is_cover(M, [k for k in S if k != i]) for i in S)


def max_lifetime(S: Iterable[int], residual: Sequence[float]) -> float:
    return min(residual[i] for i in S)


def target_weights(M: CoverageMatrix, residual: Sequence[float]) -> np.ndarray:
    """Per-target battery total of the covering sensors."""
    return np.asarray(residual, dtype=float) @ M.bits


def critical_target(M: CoverageMatrix, residual: Sequence[float], candidates: Iterable[int]) -> int:
    weights = target_weights(M, residual)
    cand = sorted(candidates)
    if not cand:
        raise ValueError("no candidate targets")
    return min(cand, key=lambda j: (weights[j], j))


def upper_bound(M: CoverageMatrix, battery: Sequence[float]) -> float:
    """No schedule can outlast the weakest target's total covering battery."""
    return float(target_weights(M, battery).min())


def total_lifetime(schedule: Schedule) -> float:
    return float(sum(x for _, x in schedule.entries))


def sensor_usage(n: int, schedule: Schedule) -> list[float]:
    usage = [0.0] * n
    for cover, x in schedule.entries:
        for i in cover:
            usage[i] += x
    return usage


def validate_schedule(M: CoverageMatrix, battery: Sequence[float], schedule: Schedule, tolerance: float = TOL) -> ValidationReport:
    cover_ok = [all(i < M.n for i in c) and is_cover(M, c) for c, _ in schedule.entries]
    lifetime_ok = [x > 0 for _, x in schedule.entries]
    usage = [0.0] * M.n
    for cover, x in schedule.entries:
        for i in cover:
            if i < M.n:
                usage[i] += x
    sensor_ok = [u <= b + tolerance for u, b in zip(usage, battery)]
    ok = all(cover_ok) and all(lifetime_ok) and all(sensor_ok)
    return ValidationReport(ok, total_lifetime(schedule), cover_ok, lifetime_ok, usage, sensor_ok)
