"""Estimate how often the default generator draws a fully covered instance.

For each sensor count n this draws fresh placements and reports the fraction in
which every target lies strictly within range of some sensor. A rate near zero
means the harness cannot build that grid cell in any reasonable number of
resamples.
"""

import argparse

import numpy as np


def coverable_fraction(n, m, trials, rng, rng_range=70.0, area=1000.0, target_area=800.0):
    lo = (area - target_area) / 2
    hits = 0
    for _ in range(trials):
        s = rng.uniform(0, area, (n, 2))
        t = rng.uniform(lo, lo + target_area, (m, 2))
        d2 = ((s[:, None, :] - t[None, :, :]) ** 2).sum(-1)
        hits += bool((d2 < rng_range**2).any(0).all())
    return hits / trials


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=25)
    ap.add_argument("--n", type=int, nargs="+", default=[20, 50, 70, 100, 120, 150])
    ap.add_argument("--trials", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    for n in args.n:
        p = coverable_fraction(n, args.m, args.trials, rng)
        print(f"n={n:>4} m={args.m}: {p:.5f} of placements cover every target")


if __name__ == "__main__":
    main()
