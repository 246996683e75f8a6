"""Normalized frequencies vs. phi at alpha = pi/3, next to the quantum prediction.

    python scripts/fig4_sweep.py [--seed 42] [--points 33] [--plot fig4.png]
"""
import argparse
import math

from dlmsim.experiments import ExperimentConfig, sweep
from dlmsim.stats import compare, sweep_summary


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--alpha", type=float, default=math.pi / 3)
    ap.add_argument("--points", type=int, default=33)
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--gamma", type=float, default=0.99)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--plot", default=None, help="write a PNG (needs matplotlib)")
    args = ap.parse_args()

    phis = [2 * math.pi * i / (args.points - 1) for i in range(args.points)]
    base = ExperimentConfig(alpha=args.alpha, n_pairs=args.n, gamma=args.gamma, seed=args.seed)
    recs = [compare(p.counts, p.config) for p in sweep(base, [args.alpha], phis)]

    print(f"{'phi':>7} " + " ".join(f"{'f' + c:>7} {'p' + c:>7}" for c in ("00", "10", "01", "11")))
    for r in recs:
        cells = [(0, 0), (1, 0), (0, 1), (1, 1)]
        print(f"{r.phi:7.4f} " + " ".join(f"{r.f[v][u]:7.4f} {r.p[v][u]:7.4f}" for v, u in cells))
    max_d, rms = sweep_summary(recs)
    print(f"max |f - p| = {max_d:.4f}   RMS = {rms:.4f}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 4))
        styles = {(0, 0): ("s", "none"), (1, 0): ("o", "none"), (0, 1): ("s", None), (1, 1): ("o", None)}
        for (v, u), (marker, face) in styles.items():
            ax.plot(phis, [r.f[v][u] for r in recs], marker, mfc=face, label=f"v={v}, u={u}")
            ax.plot(phis, [r.p[v][u] for r in recs], "k-", lw=0.8)
        ax.set_xlabel("phi")
        ax.set_ylabel("normalized frequency")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)


if __name__ == "__main__":
    main()
