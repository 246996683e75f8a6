"""Event-by-event simulation of Mach-Zehnder and delayed-choice experiments.

Particle-like messengers are routed one at a time through adaptive units
(deterministic learning machines); detection counts are compared against the
quantum-theory prediction computed in :mod:`dlmsim.oracle`.
"""
__version__ = "0.1.0"
