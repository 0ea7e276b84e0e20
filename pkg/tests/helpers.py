"""Small oracle-scale instances shared by the property and acceptance tests."""

from coverlife import GenConfig, GenerationFailed, SplitMix64, build_coverage_matrix, generate


def small_instance(seed, min_cover=2):
    """n in [6, 12], m in [4, 8] on a 100 m square; the range grows in 5 m steps
    until every target has at least ``min_cover`` covering sensors."""
    rng = SplitMix64(seed)
    n = 6 + int(rng.next_uniform() * 7)
    m = 4 + int(rng.next_uniform() * 5)
    for rng_m in range(25, 200, 5):
        try:
            inst = generate(GenConfig(n, m, seed, sensor_area=100.0, target_area=80.0, range=float(rng_m), max_resamples=20))
        except GenerationFailed:
            continue
        M = build_coverage_matrix(inst)
        if M.bits.sum(axis=0).min() >= min_cover:
            return inst, M
    raise AssertionError(f"no instance with {min_cover}-fold coverage for seed {seed}")
