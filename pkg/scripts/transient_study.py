"""How much of the run-to-run spread comes from the units' random start.

For one (alpha, phi) point, compares the seed-to-seed standard deviation of
each frequency with the binomial value, for fresh units and for units that
were first run for ``--warmup`` unrecorded pairs. Then prints the fraction of
|z| < 4 over alpha = pi/3 sweeps with fresh and with carried units.

    python scripts/transient_study.py [--seeds 200] [--warmup 5000]
"""
import argparse
import math
from dataclasses import replace

import numpy as np

from dlmsim.core import RandomSource
from dlmsim.experiments import ExperimentConfig, build_units, run, sweep
from dlmsim.oracle import probs_closed_form
from dlmsim.stats import compare, z_pass_fraction


def spread(cfg, seeds, warmup):
    fs = []
    for s in range(seeds):
        rng = RandomSource(s, (9,))
        units = build_units(cfg, rng)
        if warmup:
            run(replace(cfg, n_pairs=warmup), rng, units=units)
        fs.append(np.array(run(cfg, rng, units=units).n) / cfg.n_pairs)
    return np.array(fs).std(axis=0)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=200)
    ap.add_argument("--warmup", type=int, default=5000)
    args = ap.parse_args()

    cfg = ExperimentConfig(alpha=math.pi / 3, phi=math.pi / 2)
    p = np.array(probs_closed_form(cfg.alpha, cfg.phi))
    binom = np.sqrt(p * (1 - p) / cfg.n_pairs)
    print("cell   binomial   fresh   warmed")
    fresh, warm = spread(cfg, args.seeds, 0), spread(cfg, args.seeds, args.warmup)
    for v, u in ((0, 0), (1, 0), (0, 1), (1, 1)):
        print(f"({v},{u})  {binom[v, u]:.4f}    {fresh[v, u]:.4f}  {warm[v, u]:.4f}")

    phis = [2 * math.pi * i / 32 for i in range(33)]
    for carry in (False, True):
        recs = []
        for s in range(42, 47):
            base = ExperimentConfig(alpha=math.pi / 3, seed=s, carry_state=carry)
            recs += [compare(pt.counts, pt.config) for pt in sweep(base, [math.pi / 3], phis)]
        print(f"carry_state={carry!s:5}  |z|<4 fraction = {z_pass_fraction(recs):.4f}")


if __name__ == "__main__":
    main()
