"""Seeded random instances: sensors over the monitored square, targets in its centered sub-square."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Instance

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MUL1 = 0xBF58476D1CE4E5B9
MUL2 = 0x94D049BB133111EB


class GenerationFailed(RuntimeError):
    pass


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MUL1) & MASK64
    z = ((z ^ (z >> 27)) * MUL2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """splitmix64 stream. ``uniforms(k)`` yields the same values as ``k`` calls to ``next_uniform``."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def next_uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def u64s(self, k: int) -> np.ndarray:
        steps = np.arange(1, k + 1, dtype=np.uint64)
        z = np.uint64(self.state) + steps * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MUL1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MUL2)
        z = z ^ (z >> np.uint64(31))
        self.state = (self.state + k * GAMMA) & MASK64
        return z

    def uniforms(self, k: int) -> np.ndarray:
        return (self.u64s(k) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def next_uniform(rng: SplitMix64) -> float:
    return rng.next_uniform()


def derive_seed(base: int, *indices: int) -> int:
    """Fold grid indices into a seed, one splitmix step per index."""
    s = base & MASK64
    for v in indices:
        s = mix64((s ^ (v & MASK64)) + GAMMA)
    return s


@dataclass(frozen=True)
class GenConfig:
    n_sensors: int
    n_targets: int
    seed: int = 0
    sensor_area: float = 1000.0
    target_area: float = 800.0
    range: float = 70.0
    max_resamples: int = 1000

    def __post_init__(self):
        if self.n_sensors < 1 or self.n_targets < 1:
            raise ValueError("need at least one sensor and one target")
        if not self.range > 0:
            raise ValueError("range must be positive")
        if not 0 < self.target_area <= self.sensor_area:
            raise ValueError("target area must be positive and fit inside the sensor area")
        if self.max_resamples < 0:
            raise ValueError("max_resamples must be non-negative")


def generate(config: GenConfig) -> Instance:
    """Draw instances from one stream until every target has a covering sensor.

    Draw order per attempt is sensor 0 x, sensor 0 y, sensor 1 x, ..., then the
    targets the same way. A failed attempt is discarded whole and the next
    attempt continues from the current stream state.
    """
    rng = SplitMix64(config.seed)
    n, m = config.n_sensors, config.n_targets
    offset = (config.sensor_area - config.target_area) / 2
    per_attempt = 2 * (n + m)
    attempts_left = config.max_resamples + 1
    # attempts are drawn in vectorized batches; taking the first feasible one
    # gives the same instance as drawing attempts one at a time
    batch = 1
    while attempts_left:
        k = min(batch, attempts_left)
        u = rng.uniforms(k * per_attempt).reshape(k, per_attempt)
        sensors = u[:, : 2 * n].reshape(k, n, 2) * config.sensor_area
        targets = u[:, 2 * n :].reshape(k, m, 2) * config.target_area + offset
        d = sensors[:, :, None, :] - targets[:, None, :, :]
        feasible = ((d * d).sum(axis=3) < config.range * config.range).any(axis=1).all(axis=1)
        hits = np.flatnonzero(feasible)
        if hits.size:
            a = int(hits[0])
            return Instance(
                sensors=tuple(map(tuple, sensors[a].tolist())),
                targets=tuple(map(tuple, targets[a].tolist())),
                range=config.range,
                battery=(1.0,) * n,
            )
        attempts_left -= k
        batch = min(batch * 2, 64)
    raise GenerationFailed(
        f"no feasible instance for n={n}, m={m}, range={config.range} after {config.max_resamples} resamples"
    )
