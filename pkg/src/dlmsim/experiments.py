"""Circuit topologies, the event-by-event procedure, and parameter sweeps.

Every run first initializes its units (three uniforms each, in unit order),
then consumes a fixed number of uniforms per emitted pair:

    wdc-quantum    ancilla H1, ancilla H2, photon H1, photon CH   (4)
    wdc-classical  control draw, photon H1, photon CH             (3)
    mzi            H1, H2                                         (2)

Two interchangeable back ends follow exactly this order. ``"reference"``
chains the functions of :mod:`dlmsim.gates` one messenger at a time;
``"kernel"`` is a compiled loop over a block of pre-drawn uniforms. Both give
identical counts for identical streams.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from numba import njit

from .core import (
    Message,
    RandomSource,
    ancilla_angle,
    angle_key,
    closure_angle,
    new_message,
    rotate_message,
    uniform,
)
from .gates import DlmState, check_gamma, init_dlm, process_event

INIT_STREAM = (0,)


class Kind(str, enum.Enum):
    MZI = "mzi"
    WDC_CLASSICAL = "wdc-classical"
    WDC_QUANTUM = "wdc-quantum"


N_UNITS = {Kind.WDC_QUANTUM: 4, Kind.WDC_CLASSICAL: 2, Kind.MZI: 2}
DRAWS_PER_PAIR = {Kind.WDC_QUANTUM: 4, Kind.WDC_CLASSICAL: 3, Kind.MZI: 2}


@dataclass(frozen=True)
class ExperimentConfig:
    kind: Kind = Kind.WDC_QUANTUM
    alpha: float = 0.0
    phi: float = 0.0
    phi0: float = 0.0
    phi1: float = 0.0
    n_pairs: int = 10_000
    gamma: float = 0.99
    seed: int = 0
    carry_state: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.n_pairs < 1:
            raise ValueError(f"n_pairs must be >= 1, got {self.n_pairs}")
        check_gamma(self.gamma)

    @property
    def mzi_difference(self) -> float:
        return self.phi0 - self.phi1


@dataclass
class JointCounts:
    """Coincidence counts n[v][u]; for the MZI only the u=0 column is used."""

    n: list[list[int]] = field(default_factory=lambda: [[0, 0], [0, 0]])

    @property
    def total(self) -> int:
        return sum(self.n[0]) + sum(self.n[1])

    def flat(self) -> tuple[int, int, int, int]:
        """Cells in (v,u) order (0,0), (1,0), (0,1), (1,1)."""
        return self.n[0][0], self.n[1][0], self.n[0][1], self.n[1][1]


def build_units(cfg: ExperimentConfig, rng: RandomSource) -> list[DlmState]:
    return [init_dlm(cfg.gamma, rng) for _ in range(N_UNITS[cfg.kind])]


# -- reference back end ------------------------------------------------------


def _ref_quantum(cfg, units, rng, counts):
    a1, a2, h1, ch = units
    rot_a = ancilla_angle(cfg.alpha)
    rot_p = closure_angle(cfg.phi)
    for _ in range(cfg.n_pairs):
        _, k, m = process_event(a1, 0, new_message(), None, rng)
        if k == 1:
            m = rotate_message(m, rot_a)
        _, u, _ = process_event(a2, k, m, None, rng)
        _, k, m = process_event(h1, 0, new_message(), None, rng)
        if k == 1:
            m = rotate_message(m, rot_p)
        _, v, _ = process_event(ch, k, m, u, rng)
        counts[v][u] += 1


def _ref_classical(cfg, units, rng, counts):
    h1, ch = units
    p_on = math.sin(cfg.alpha) ** 2
    rot_p = closure_angle(cfg.phi)
    for _ in range(cfg.n_pairs):
        x = 1 if uniform(rng) < p_on else 0
        _, k, m = process_event(h1, 0, new_message(), None, rng)
        if k == 1:
            m = rotate_message(m, rot_p)
        _, v, _ = process_event(ch, k, m, x, rng)
        counts[v][x] += 1


def _ref_mzi(cfg, units, rng, counts):
    h1, h2 = units
    rot = closure_angle(cfg.phi1 - cfg.phi0)
    for _ in range(cfg.n_pairs):
        _, k, m = process_event(h1, 0, new_message(), None, rng)
        if k == 1:
            m = rotate_message(m, rot)
        _, v, _ = process_event(h2, k, m, None, rng)
        counts[v][0] += 1


_REFERENCE = {
    Kind.WDC_QUANTUM: _ref_quantum,
    Kind.WDC_CLASSICAL: _ref_classical,
    Kind.MZI: _ref_mzi,
}

# -- compiled back end -------------------------------------------------------
# unit state row: c0, s0, c1, s1, x0, x1


@njit(cache=True)
def _event(st, g, k, yc, ys, control, r):
    """One unit event; control < 0 selects the plain Hadamard transform."""
    st[2 * k] = yc
    st[2 * k + 1] = ys
    if k == 0:
        st[4] = g * st[4] + (1.0 - g)
        st[5] = g * st[5]
    else:
        st[4] = g * st[4]
        st[5] = g * st[5] + (1.0 - g)
    c0, s0, c1, s1 = st[0], st[1], st[2], st[3]
    r0 = math.sqrt(st[4])
    r1 = math.sqrt(st[5])
    if control == 0:
        v0, v1, v2, v3 = c0 * r0, s0 * r0, c1 * r1, s1 * r1
    else:
        h = 1.0 / math.sqrt(2.0)
        v0 = h * (c1 * r1 + c0 * r0)
        v1 = h * (s1 * r1 + s0 * r0)
        v2 = h * (c1 * r1 - c0 * r0)
        v3 = h * (s1 * r1 - s0 * r0)
    l0 = v0 * v0 + v1 * v1
    if r < l0:
        port, a, b, n2 = 0, v0, v1, l0
    else:
        port, a, b, n2 = 1, v2, v3, v2 * v2 + v3 * v3
    if n2 < 1e-24:
        return port, 1.0, 0.0
    n = math.sqrt(n2)
    return port, a / n, b / n


@njit(cache=True)
def _rotate(c, s, cp, sp):
    return c * cp + s * sp, -c * sp + s * cp


@njit(cache=True)
def _kernel(kind, st, g, n_pairs, draws, ca, sa, cp, sp, p_on):
    counts = np.zeros((2, 2), dtype=np.int64)
    j = 0
    for _ in range(n_pairs):
        if kind == 0:  # wdc-quantum
            k, mc, ms = _event(st[0], g, 0, 1.0, 0.0, -1, draws[j])
            if k == 1:
                mc, ms = _rotate(mc, ms, ca, sa)
            u, mc, ms = _event(st[1], g, k, mc, ms, -1, draws[j + 1])
            k, mc, ms = _event(st[2], g, 0, 1.0, 0.0, -1, draws[j + 2])
            if k == 1:
                mc, ms = _rotate(mc, ms, cp, sp)
            v, mc, ms = _event(st[3], g, k, mc, ms, u, draws[j + 3])
            j += 4
        elif kind == 1:  # wdc-classical
            u = 1 if draws[j] < p_on else 0
            k, mc, ms = _event(st[0], g, 0, 1.0, 0.0, -1, draws[j + 1])
            if k == 1:
                mc, ms = _rotate(mc, ms, cp, sp)
            v, mc, ms = _event(st[1], g, k, mc, ms, u, draws[j + 2])
            j += 3
        else:  # mzi
            u = 0
            k, mc, ms = _event(st[0], g, 0, 1.0, 0.0, -1, draws[j])
            if k == 1:
                mc, ms = _rotate(mc, ms, cp, sp)
            v, mc, ms = _event(st[1], g, k, mc, ms, -1, draws[j + 1])
            j += 2
        counts[v, u] += 1
    return counts


_KIND_CODE = {Kind.WDC_QUANTUM: 0, Kind.WDC_CLASSICAL: 1, Kind.MZI: 2}


def _pack(units: Sequence[DlmState]) -> np.ndarray:
    return np.array(
        [[u.reg[0].c, u.reg[0].s, u.reg[1].c, u.reg[1].s, u.x0, u.x1] for u in units],
        dtype=np.float64,
    )


def _unpack(st: np.ndarray, units: Sequence[DlmState], n_events: int) -> None:
    for row, u in zip(st.tolist(), units):
        u.reg[0] = Message(row[0], row[1])
        u.reg[1] = Message(row[2], row[3])
        u.x0, u.x1 = row[4], row[5]
        u.events += n_events


def _run_kernel(cfg, units, rng, counts):
    if cfg.kind is Kind.MZI:
        rot_p = closure_angle(cfg.phi1 - cfg.phi0)
    else:
        rot_p = closure_angle(cfg.phi)
    rot_a = ancilla_angle(cfg.alpha)
    draws = rng.take(DRAWS_PER_PAIR[cfg.kind] * cfg.n_pairs)
    st = _pack(units)
    out = _kernel(
        _KIND_CODE[cfg.kind], st, cfg.gamma, cfg.n_pairs, draws,
        math.cos(rot_a), math.sin(rot_a), math.cos(rot_p), math.sin(rot_p),
        math.sin(cfg.alpha) ** 2,
    )
    _unpack(st, units, cfg.n_pairs)
    for v in (0, 1):
        for u in (0, 1):
            counts[v][u] += int(out[v, u])


def _run(cfg, rng, units, backend) -> JointCounts:
    if units is None:
        units = build_units(cfg, rng)
    elif len(units) != N_UNITS[cfg.kind]:
        raise ValueError(f"{cfg.kind.value} needs {N_UNITS[cfg.kind]} units, got {len(units)}")
    counts = JointCounts()
    if backend == "kernel":
        _run_kernel(cfg, units, rng, counts.n)
    elif backend == "reference":
        _REFERENCE[cfg.kind](cfg, units, rng, counts.n)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return counts


def run_quantum_controlled(cfg, rng, units=None, backend="kernel") -> JointCounts:
    """Ancilla-controlled delayed choice; n[v][u] with u the detected ancilla port."""
    if cfg.kind is not Kind.WDC_QUANTUM:
        raise ValueError(f"expected kind wdc-quantum, got {cfg.kind.value}")
    return _run(cfg, rng, units, backend)


def run_classical_wdc(cfg, rng, units=None, backend="kernel") -> JointCounts:
    """Delayed choice with a Bernoulli(sin^2 alpha) control bit; n[v][x]."""
    if cfg.kind is not Kind.WDC_CLASSICAL:
        raise ValueError(f"expected kind wdc-classical, got {cfg.kind.value}")
    return _run(cfg, rng, units, backend)


def run_mzi(cfg, rng, units=None, backend="kernel") -> tuple[int, int]:
    if cfg.kind is not Kind.MZI:
        raise ValueError(f"expected kind mzi, got {cfg.kind.value}")
    counts = _run(cfg, rng, units, backend)
    return counts.n[0][0], counts.n[1][0]


def run(cfg: ExperimentConfig, rng: RandomSource, units=None, backend="kernel") -> JointCounts:
    """Dispatch on ``cfg.kind``; MZI counts land in the u=0 column."""
    return _run(cfg, rng, units, backend)


# -- sweeps ------------------------------------------------------------------


@dataclass(frozen=True)
class SweepPoint:
    alpha: float
    phi: float
    config: ExperimentConfig
    counts: JointCounts


def point_config(base: ExperimentConfig, alpha: float, phi: float) -> ExperimentConfig:
    """Config for one grid point. For the MZI, ``phi`` is the difference phi0 - phi1."""
    if base.kind is Kind.MZI:
        return replace(base, alpha=alpha, phi=phi, phi1=base.phi0 - phi)
    return replace(base, alpha=alpha, phi=phi)


def point_stream(seed: int, alpha: float, phi: float) -> RandomSource:
    return RandomSource(seed, angle_key(alpha, phi))


def _run_point(args) -> JointCounts:
    cfg, backend = args
    return run(cfg, point_stream(cfg.seed, cfg.alpha, cfg.phi), backend=backend)


def sweep(
    base: ExperimentConfig,
    alphas: Sequence[float],
    phis: Sequence[float],
    jobs: int = 1,
    backend: str = "kernel",
) -> list[SweepPoint]:
    """Run every (alpha, phi) pair, row-major over alphas x phis.

    Each point draws from its own stream keyed by the point's angles, so
    results do not depend on grid order. With ``carry_state`` the units are
    initialized once (from a dedicated stream) and carried through the
    points in order, which makes the sweep order-dependent and sequential.
    """
    if not alphas or not phis:
        raise ValueError("sweep grids must be non-empty")
    cfgs = [point_config(base, a, p) for a in alphas for p in phis]

    if base.carry_state:
        units = build_units(base, RandomSource(base.seed, INIT_STREAM))
        results = [
            run(c, point_stream(c.seed, c.alpha, c.phi), units=units, backend=backend)
            for c in cfgs
        ]
    elif jobs > 1 and len(cfgs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_point, [(c, backend) for c in cfgs]))
    else:
        results = [_run_point((c, backend)) for c in cfgs]

    return [SweepPoint(c.alpha, c.phi, c, r) for c, r in zip(cfgs, results)]
