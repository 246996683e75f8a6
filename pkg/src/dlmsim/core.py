"""Messages, messengers, phase rotation and the random-number source."""
from __future__ import annotations

import enum
import math
import struct
from typing import NamedTuple, Sequence

import numpy as np

_BLOCK = 4096


class Message(NamedTuple):
    """Unit vector (cos psi, sin psi) carried by a messenger."""

    c: float
    s: float


class Line(enum.Enum):
    PHOTON = "photon"
    ANCILLA = "ancilla"


class Messenger(NamedTuple):
    line: Line
    port: int
    message: Message


def new_message() -> Message:
    return Message(1.0, 0.0)


def rotate_message(m: Message, phi: float) -> Message:
    """Rotate a path-1 message by ``phi``; the stored angle psi becomes psi - phi."""
    cp, sp = math.cos(phi), math.sin(phi)
    return Message(m.c * cp + m.s * sp, -m.c * sp + m.s * cp)


def closure_angle(phase: float) -> float:
    """Path-1 rotation giving port-0 probability cos^2(phase/2) after two Hadamard units.

    The Hadamard transform emits port-1 messages with a sign flip, so a
    zero-phase interferometer would exit on port 1; the half turn undoes that.
    """
    return phase + math.pi


def ancilla_angle(alpha: float) -> float:
    """Rotation inside the ancilla interferometer so that P(ancilla on 1) = sin^2(alpha)."""
    return closure_angle(2.0 * alpha)


class RandomSource:
    """Seedable, splittable uniform generator.

    Backed by numpy's PCG64 seeded through ``SeedSequence(seed, spawn_key=stream)``,
    so ``(seed, stream)`` fully determines the sequence. Scalar draws are served
    from a prefetched block; :meth:`take` continues the very same sequence.
    """

    def __init__(self, seed: int, stream: Sequence[int] = ()):
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = int(seed)
        self.stream = tuple(int(s) for s in stream)
        seq = np.random.SeedSequence(self.seed, spawn_key=self.stream)
        self._gen = np.random.Generator(np.random.PCG64(seq))
        self._buf: list[float] = []
        self._pos = 0

    def next(self) -> float:
        if self._pos >= len(self._buf):
            self._buf = self._gen.random(_BLOCK).tolist()
            self._pos = 0
        r = self._buf[self._pos]
        self._pos += 1
        return r

    def take(self, n: int) -> np.ndarray:
        """Return the next ``n`` uniforms as an array, in the order ``next`` would."""
        rest = self._buf[self._pos:]
        self._buf, self._pos = [], 0
        if len(rest) >= n:
            self._buf, head = rest[n:], rest[:n]
            return np.asarray(head, dtype=np.float64)
        tail = self._gen.random(n - len(rest))
        return np.concatenate([np.asarray(rest, dtype=np.float64), tail])

    def derive(self, *stream: int) -> RandomSource:
        """Independent child stream keyed by ``stream`` (not by draw history)."""
        return RandomSource(self.seed, self.stream + tuple(stream))


def uniform(rng: RandomSource) -> float:
    return rng.next()


def angle_key(*angles: float) -> tuple[int, ...]:
    """Stream key from the exact bit patterns of the given angles."""
    return tuple(struct.unpack("<Q", struct.pack("<d", float(a)))[0] for a in angles)
