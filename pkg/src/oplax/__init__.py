"""Operadic Lax pairs for the harmonic oscillator, Bianchi algebra
deformations, and quasi-CCR symbolic verification."""

from .oscillator import HOParams, PhasePoint, trajectory

__all__ = ["HOParams", "PhasePoint", "trajectory"]

__version__ = "0.1.0"
