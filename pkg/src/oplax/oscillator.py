"""Harmonic-oscillator phase flow and quasi-canonical coordinates.

The exact solution with q(0) = 0, p(0) = p0 > 0 is used throughout; no ODE
integration.  Quasi-canonical coordinates (Q, P) are defined by

    P^2 - Q^2 = 2p,    Q P = omega * q,

which force P^2 + Q^2 = 2 sqrt(2H).  Along the flow the closed forms

    Q = sqrt(2 p0) sin(omega t / 2),    P = sqrt(2 p0) cos(omega t / 2)

satisfy all three constraints globally (they rotate at half the oscillator
frequency and change sign smoothly past |omega t| = pi).

Poisson convention: {f, g} = f_p g_q - f_q g_p, i.e. {p, q} = +1.  This is
the convention under which {P, Q} = omega / (2 sqrt(2H)) comes out positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable


class BranchPointError(ValueError):
    """(q, p) lies on the P = 0 branch (the p0 < 0 family, unsupported)."""


@dataclass(frozen=True)
class HOParams:
    """Oscillator parameters; energy E = p0^2 / 2 so that p0 = sqrt(2E)."""

    omega: float
    p0: float

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be > 0, got {self.omega}")
        if not self.p0 > 0:
            raise ValueError(f"p0 must be > 0, got {self.p0}")

    @property
    def energy(self) -> float:
        return self.p0 * self.p0 / 2

    @classmethod
    def from_energy(cls, omega: float, energy: float) -> "HOParams":
        if not energy > 0:
            raise ValueError(f"energy must be > 0, got {energy}")
        return cls(omega=omega, p0=math.sqrt(2 * energy))


@dataclass(frozen=True)
class PhasePoint:
    """Oscillator state with derived quasi-canonical coordinates."""

    t: float
    q: float
    p: float
    Q: float
    P: float
    H: float


def trajectory(params: HOParams, t: float) -> PhasePoint:
    """Exact flow from (q, p)(0) = (0, p0)."""
    w, p0 = params.omega, params.p0
    root = math.sqrt(2 * p0)
    return PhasePoint(
        t=t,
        q=(p0 / w) * math.sin(w * t),
        p=p0 * math.cos(w * t),
        Q=root * math.sin(w * t / 2),
        P=root * math.cos(w * t / 2),
        H=params.energy,
    )


def quasi_from_phase(params: HOParams, q: float, p: float,
                     tol: float = 1e-12) -> tuple[float, float]:
    """Reconstruct (Q, P) from (q, p), taking the P > 0 root.

    Valid away from the branch point sqrt(2H) + p = 0; there the P = 0
    family (p0 < 0 initial data) starts and we refuse.
    """
    w = params.omega
    H = (p * p + w * w * q * q) / 2
    s = math.sqrt(2 * H)
    if s + p <= tol:
        raise BranchPointError(
            f"sqrt(2H) + p = {s + p} <= tol; point is on the P = 0 branch"
        )
    P = math.sqrt(s + p)
    Q = w * q / P
    return Q, P


PhaseFunction = Callable[[float, float], float]


def poisson_bracket(f: PhaseFunction, g: PhaseFunction,
                    at: tuple[float, float], step: float = 1e-6) -> float:
    """Central-difference {f, g} = f_p g_q - f_q g_p at (q, p)."""
    if not step > 0:
        raise ValueError(f"step must be > 0, got {step}")
    q, p = at
    fq = (f(q + step, p) - f(q - step, p)) / (2 * step)
    fp = (f(q, p + step) - f(q, p - step)) / (2 * step)
    gq = (g(q + step, p) - g(q - step, p)) / (2 * step)
    gp = (g(q, p + step) - g(q, p - step)) / (2 * step)
    return fp * gq - fq * gp
