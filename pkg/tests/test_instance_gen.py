import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coverlife import GenConfig, GenerationFailed, SplitMix64, build_coverage_matrix, generate
from coverlife.instance_gen import MASK64, derive_seed, next_uniform


def reference_splitmix(seed, k):
    """Textbook splitmix64, written out independently of the package."""
    s = seed
    out = []
    for _ in range(k):
        s = (s + 0x9E3779B97F4A7C15) % 2**64
        z = s
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) % 2**64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) % 2**64
        out.append(z ^ (z >> 31))
    return out


def reference_generate(cfg):
    """One attempt at a time, scalar draws, in the documented draw order."""
    rng = SplitMix64(cfg.seed)
    off = (cfg.sensor_area - cfg.target_area) / 2
    for _ in range(cfg.max_resamples + 1):
        sensors = [(rng.next_uniform() * cfg.sensor_area, rng.next_uniform() * cfg.sensor_area) for _ in range(cfg.n_sensors)]
        targets = [(rng.next_uniform() * cfg.target_area + off, rng.next_uniform() * cfg.target_area + off) for _ in range(cfg.n_targets)]
        if all(any((sx - tx) ** 2 + (sy - ty) ** 2 < cfg.range**2 for sx, sy in sensors) for tx, ty in targets):
            return sensors, targets
    return None


class TestSplitMix:
    def test_seed_zero_golden(self):
        # published first outputs of splitmix64 seeded with 0
        rng = SplitMix64(0)
        assert [rng.next_u64() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]

    def test_first_uniform_seed_zero(self):
        assert SplitMix64(0).next_uniform() == 0.8833108082136426
        assert next_uniform(SplitMix64(0)) == (0xE220A8397B1DCDAF >> 11) * 2.0**-53

    @given(st.integers(0, MASK64))
    def test_matches_reference(self, seed):
        rng = SplitMix64(seed)
        assert [rng.next_u64() for _ in range(5)] == reference_splitmix(seed, 5)

    @given(st.integers(0, MASK64), st.integers(1, 300))
    def test_vectorized_matches_scalar(self, seed, k):
        a, b = SplitMix64(seed), SplitMix64(seed)
        assert b.uniforms(k).tolist() == [a.next_uniform() for _ in range(k)]
        assert a.state == b.state

    @given(st.integers(0, MASK64))
    def test_uniform_range(self, seed):
        u = SplitMix64(seed).uniforms(1000)
        assert u.min() >= 0.0 and u.max() < 1.0

    def test_equal_seeds_equal_streams(self):
        assert SplitMix64(99).uniforms(50).tolist() == SplitMix64(99).uniforms(50).tolist()

    def test_derive_seed_separates_cells(self):
        seeds = {derive_seed(42, a, b, c) for a in range(3) for b in range(8) for c in range(15)}
        assert len(seeds) == 3 * 8 * 15
        assert derive_seed(42, 0, 1, 2) == derive_seed(42, 0, 1, 2)


class TestGenerate:
    def test_feasible(self):
        inst = generate(GenConfig(150, 20, seed=1))
        M = build_coverage_matrix(inst)
        assert M.bits.any(axis=0).all()
        assert inst.battery == (1.0,) * 150

    def test_deterministic(self):
        cfg = GenConfig(150, 20, seed=1)
        assert generate(cfg) == generate(cfg)

    def test_sparse_config_fails(self):
        with pytest.raises(GenerationFailed):
            generate(GenConfig(1, 50, seed=0, range=1.0, max_resamples=10))

    @pytest.mark.parametrize("seed", [0, 1, 7, 123])
    def test_batched_draws_match_one_at_a_time(self, seed):
        cfg = GenConfig(30, 6, seed=seed, max_resamples=5000, range=150)
        ref = reference_generate(cfg)
        inst = generate(cfg)
        assert list(inst.sensors) == ref[0]
        assert list(inst.targets) == ref[1]

    def test_regions(self):
        inst = generate(GenConfig(150, 30, seed=4))
        s, t = np.array(inst.sensors), np.array(inst.targets)
        assert s.min() >= 0 and s.max() < 1000
        assert t.min() >= 100 and t.max() < 900

    def test_sensor_draws_come_first(self):
        # first attempt of each: sensor coordinates do not depend on the target count
        a = generate(GenConfig(40, 1, seed=11, range=2000))
        b = generate(GenConfig(40, 3, seed=11, range=2000))
        assert a.sensors == b.sensors

    @pytest.mark.parametrize(
        "kwargs",
        [dict(n_sensors=0, n_targets=1), dict(n_sensors=1, n_targets=0), dict(n_sensors=1, n_targets=1, range=0),
         dict(n_sensors=1, n_targets=1, target_area=1001)],
    )
    def test_config_invariants(self, kwargs):
        with pytest.raises(ValueError):
            GenConfig(**kwargs)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32), st.integers(100, 150), st.integers(1, 30))
    def test_generated_instances_are_feasible(self, seed, n, m):
        inst = generate(GenConfig(n, m, seed=seed, max_resamples=20_000))
        build_coverage_matrix(inst)

    def test_single_target_coverage_rate(self):
        # empirical check of the per-target cover probability pi r^2 / area for an interior target
        p = math.pi * 70**2 / 1000**2
        rng = SplitMix64(3)
        hits = 0
        trials = 4000
        for _ in range(trials):
            x, y = rng.uniforms(2) * 1000
            hits += (x - 500) ** 2 + (y - 500) ** 2 < 70**2
        assert abs(hits / trials - p) < 4 * math.sqrt(p * (1 - p) / trials)
