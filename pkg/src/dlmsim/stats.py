"""Normalized frequencies, comparison against the oracle, sweep-level metrics."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .experiments import ExperimentConfig, JointCounts, Kind
from .oracle import mzi_prob, probs_closed_form

# oracle cells this close to 0 or 1 have no usable binomial scale
_DEGENERATE_P = 1e-12

Table = list[list[float]]


@dataclass(frozen=True)
class FrequencyRecord:
    alpha: float
    phi: float
    n_pairs: int
    counts: JointCounts
    f: Table
    p: Table
    delta: Table
    z: list[list[Optional[float]]]
    columns: tuple[int, ...] = (0, 1)

    def cells(self):
        """(v, u) pairs that carry data; the MZI has no u=1 column."""
        return [(v, u) for u in self.columns for v in (0, 1)]


def normalize(counts: JointCounts, n_pairs: int) -> Table:
    if counts.total != n_pairs:
        raise ValueError(f"counts sum to {counts.total}, expected {n_pairs}")
    return [[counts.n[v][u] / n_pairs for u in (0, 1)] for v in (0, 1)]


def oracle_table(cfg: ExperimentConfig) -> Table:
    if cfg.kind is Kind.MZI:
        p0, p1 = mzi_prob(cfg.phi0, cfg.phi1)
        return [[p0, 0.0], [p1, 0.0]]
    return probs_closed_form(cfg.alpha, cfg.phi)


def z_score(delta: float, p: float, n: int) -> Optional[float]:
    if p < _DEGENERATE_P or p > 1.0 - _DEGENERATE_P:
        return None
    return delta / math.sqrt(p * (1.0 - p) / n)


def compare(counts: JointCounts, cfg: ExperimentConfig) -> FrequencyRecord:
    n = cfg.n_pairs
    f = normalize(counts, n)
    p = oracle_table(cfg)
    delta = [[f[v][u] - p[v][u] for u in (0, 1)] for v in (0, 1)]
    columns = (0,) if cfg.kind is Kind.MZI else (0, 1)
    z = [
        [z_score(delta[v][u], p[v][u], n) if u in columns else None for u in (0, 1)]
        for v in (0, 1)
    ]
    return FrequencyRecord(
        alpha=cfg.alpha, phi=cfg.phi, n_pairs=n, counts=counts,
        f=f, p=p, delta=delta, z=z, columns=columns,
    )


def sweep_summary(records: Sequence[FrequencyRecord]) -> tuple[float, float]:
    """(max |delta|, RMS delta) over every data cell of every record."""
    if not records:
        raise ValueError("no records to summarize")
    ds = [r.delta[v][u] for r in records for v, u in r.cells()]
    return max(abs(d) for d in ds), math.sqrt(math.fsum(d * d for d in ds) / len(ds))


def z_pass_fraction(records: Sequence[FrequencyRecord], bound: float = 4.0) -> float:
    """Fraction of defined z-scores with |z| < bound."""
    zs = [r.z[v][u] for r in records for v, u in r.cells() if r.z[v][u] is not None]
    if not zs:
        raise ValueError("no defined z-scores")
    return sum(abs(z) < bound for z in zs) / len(zs)
