"""Deviation from theory over an (alpha, phi) grid, summarized per alpha.

    python scripts/fig5_deviations.py [--alphas 9] [--phis 33] [--seed 1] [--jobs 1]
"""
import argparse
import math

from dlmsim.experiments import ExperimentConfig, sweep
from dlmsim.stats import compare, sweep_summary, z_pass_fraction


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--alphas", type=int, default=9)
    ap.add_argument("--phis", type=int, default=33)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--gamma", type=float, default=0.99)
    ap.add_argument("--carry-state", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    alphas = [math.pi / 2 * i / (args.alphas - 1) for i in range(args.alphas)]
    phis = [2 * math.pi * i / (args.phis - 1) for i in range(args.phis)]
    base = ExperimentConfig(gamma=args.gamma, seed=args.seed, carry_state=args.carry_state)
    points = sweep(base, alphas, phis, jobs=args.jobs)
    recs = [compare(p.counts, p.config) for p in points]

    print(f"{'alpha':>7} {'max|d|':>8} {'rms':>8} {'|z|<4':>7}")
    for i, a in enumerate(alphas):
        row = recs[i * len(phis):(i + 1) * len(phis)]
        max_d, rms = sweep_summary(row)
        try:
            frac = f"{z_pass_fraction(row):7.3f}"
        except ValueError:
            frac = f"{'-':>7}"
        print(f"{a:7.4f} {max_d:8.4f} {rms:8.4f} {frac}")
    max_d, rms = sweep_summary(recs)
    print(f"all: max |d| = {max_d:.4f}, RMS = {rms:.4f}, |z|<4 = {z_pass_fraction(recs):.3f}")


if __name__ == "__main__":
    main()
