"""Adaptive processing units built on a deterministic learning machine (DLM).

A unit has three stages. The input stage (``dlm_update``) stores the incoming
message in the register of its arrival port and moves the internal vector
``x`` toward the unit vector of that port. The transformation stage builds a
4-vector from the registers and ``x`` (``hadamard_transform`` or
``controlled_hadamard_transform``). The output stage (``output_select``)
picks the exit port at random, weighted by the squared norm of each half of
that vector.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import Message, RandomSource, uniform

TransformVector = tuple[float, float, float, float]

_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_DEGENERATE = 1e-12


@dataclass(slots=True)
class DlmState:
    """The six stored numbers (two registers plus ``x``) and the learning parameter."""

    reg: list[Message]
    x0: float
    x1: float
    gamma: float
    events: int = field(default=0)


def check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"gamma must lie in [0, 1), got {gamma!r}")
    return gamma


def init_dlm(gamma: float, rng: RandomSource) -> DlmState:
    """Fresh machine: x = (r, 1 - r) and registers at uniformly random angles.

    Consumes exactly three uniforms, in the order r, theta_0, theta_1.
    """
    gamma = check_gamma(gamma)
    r = uniform(rng)
    t0 = 2.0 * math.pi * uniform(rng)
    t1 = 2.0 * math.pi * uniform(rng)
    reg = [Message(math.cos(t0), math.sin(t0)), Message(math.cos(t1), math.sin(t1))]
    return DlmState(reg=reg, x0=r, x1=1.0 - r, gamma=gamma)


def dlm_update(state: DlmState, k: int, y: Message) -> DlmState:
    """Input stage. Mutates ``state`` in place and returns it."""
    g = state.gamma
    state.reg[k] = y
    if k == 0:
        state.x0 = g * state.x0 + (1.0 - g)
        state.x1 = g * state.x1
    else:
        state.x0 = g * state.x0
        state.x1 = g * state.x1 + (1.0 - g)
    state.events += 1
    return state


def hadamard_transform(state: DlmState) -> TransformVector:
    (c0, s0), (c1, s1) = state.reg
    r0, r1 = math.sqrt(state.x0), math.sqrt(state.x1)
    return (
        _INV_SQRT2 * (c1 * r1 + c0 * r0),
        _INV_SQRT2 * (s1 * r1 + s0 * r0),
        _INV_SQRT2 * (c1 * r1 - c0 * r0),
        _INV_SQRT2 * (s1 * r1 - s0 * r0),
    )


def controlled_hadamard_transform(state: DlmState, control: int) -> TransformVector:
    """Hadamard transform if ``control`` is 1, weighted pass-through if 0."""
    if control:
        return hadamard_transform(state)
    (c0, s0), (c1, s1) = state.reg
    r0, r1 = math.sqrt(state.x0), math.sqrt(state.x1)
    return (c0 * r0, s0 * r0, c1 * r1, s1 * r1)


def _unit(a: float, b: float, norm2: float) -> Message:
    if norm2 < _DEGENERATE * _DEGENERATE:
        return Message(1.0, 0.0)
    n = math.sqrt(norm2)
    return Message(a / n, b / n)


def output_select(v: TransformVector, rng: RandomSource) -> tuple[int, Message]:
    """Exit on port 0 with probability v0^2 + v1^2, carrying the normalized half."""
    l0 = v[0] * v[0] + v[1] * v[1]
    if uniform(rng) < l0:
        return 0, _unit(v[0], v[1], l0)
    return 1, _unit(v[2], v[3], v[2] * v[2] + v[3] * v[3])


def process_event(
    state: DlmState,
    k: int,
    y: Message,
    control: int | None,
    rng: RandomSource,
) -> tuple[DlmState, int, Message]:
    """Run one messenger through a unit; ``control=None`` means a plain Hadamard unit."""
    dlm_update(state, k, y)
    if control is None:
        v = hadamard_transform(state)
    else:
        v = controlled_hadamard_transform(state, control)
    port, msg = output_select(v, rng)
    return state, port, msg
