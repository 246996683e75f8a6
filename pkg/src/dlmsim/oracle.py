"""Quantum-theory reference for the controlled delayed-choice circuit and the MZI.

Basis states are ordered |vu> = |00>, |01>, |10>, |11> (index 2v + u), where v
labels the photon and u the ancilla. The Hadamard matrices use the same sign
convention as the event-based transform, [[a, a], [-a, a]] with a = 1/sqrt(2),
and the phase gates receive the same effective angles the simulated network
applies (see :func:`dlmsim.core.closure_angle` and :func:`dlmsim.core.ancilla_angle`).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import ancilla_angle, closure_angle

A = 1.0 / math.sqrt(2.0)


def hadamard_ancilla() -> np.ndarray:
    return np.array(
        [[A, A, 0, 0], [-A, A, 0, 0], [0, 0, A, A], [0, 0, -A, A]], dtype=complex
    )


def phase_ancilla(theta: float) -> np.ndarray:
    return np.diag([1, cmath.exp(1j * theta), 1, 1]).astype(complex)


def hadamard_photon() -> np.ndarray:
    return np.array(
        [[A, 0, A, 0], [0, A, 0, A], [-A, 0, A, 0], [0, -A, 0, A]], dtype=complex
    )


def phase_photon(theta: float) -> np.ndarray:
    # phase on |11> only; the u=0 branch never interferes, so this is
    # observationally the same as a phase on every v=1 state
    return np.diag([1, 1, 1, cmath.exp(1j * theta)]).astype(complex)


def controlled_hadamard() -> np.ndarray:
    """Identity on the u=0 block, Hadamard on the u=1 block."""
    return np.array(
        [[1, 0, 0, 0], [0, A, 0, A], [0, 0, 1, 0], [0, -A, 0, A]], dtype=complex
    )


@dataclass(frozen=True)
class Amplitudes:
    b00: complex
    b01: complex
    b10: complex
    b11: complex

    def probs(self) -> list[list[float]]:
        """|b_vu|^2 as a [v][u] table."""
        return [
            [abs(self.b00) ** 2, abs(self.b01) ** 2],
            [abs(self.b10) ** 2, abs(self.b11) ** 2],
        ]


def amplitudes(alpha: float, phi: float) -> Amplitudes:
    a_in = np.array([1, 0, 0, 0], dtype=complex)
    b = (
        controlled_hadamard()
        @ phase_photon(closure_angle(phi))
        @ hadamard_photon()
        @ hadamard_ancilla()
        @ phase_ancilla(ancilla_angle(alpha))
        @ hadamard_ancilla()
        @ a_in
    )
    return Amplitudes(*(complex(z) for z in b))


def probs_closed_form(alpha: float, phi: float) -> list[list[float]]:
    """Joint probabilities p[v][u] of photon port v and ancilla port u."""
    ca2 = math.cos(alpha) ** 2
    sa2 = math.sin(alpha) ** 2
    return [
        [0.5 * ca2, sa2 * math.cos(phi / 2) ** 2],
        [0.5 * ca2, sa2 * math.sin(phi / 2) ** 2],
    ]


def mzi_prob(phi0: float, phi1: float) -> tuple[float, float]:
    c = math.cos(phi0 - phi1)
    return (1 + c) / 2, (1 - c) / 2


def max_discrepancy(grid: int) -> float:
    """Largest |b_vu|^2 - p(v,u) over a grid x grid lattice on [0, 2pi)^2."""
    worst = 0.0
    angles = [2 * math.pi * i / grid for i in range(grid)]
    for alpha in angles:
        for phi in angles:
            m = amplitudes(alpha, phi).probs()
            p = probs_closed_form(alpha, phi)
            for v in (0, 1):
                for u in (0, 1):
                    worst = max(worst, abs(m[v][u] - p[v][u]))
    return worst
