"""Matrix and operadic Lax pairs for the harmonic oscillator.

The matrix pair is

    L = [[p, w q, 0], [w q, -p, 0], [0, 0, 1]],
    M = (w/2) [[0, -1, 0], [1, 0, 0], [0, 0, 0]],

with dL/dt = ML - LM along the flow.  The operadic pair replaces L by a
binary operation mu on R^3 whose 27 coordinates are affine in (q, p, Q, P)
through nine real parameters C1..C9; it satisfies dmu/dt = [M, mu] with the
Gerstenhaber bracket.  solve_C inverts the t = 0 values of mu for the
parameters, so any antisymmetric initial tensor round-trips exactly.

build_mu, solve_C and mu_time_derivative use plain Python arithmetic and
work with floats or exact Fractions alike; the numpy layer only enters in
the verification routines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .operad import MultiOp, gerstenhaber
from .oscillator import HOParams, PhasePoint, trajectory


class InvalidParametersError(ValueError):
    """Parameter vector violates C2^2+C3^2+C5^2+C6^2+C7^2+C8^2 != 0."""


class NotRepresentableError(ValueError):
    """Initial tensor is not antisymmetric in its lower indices."""


@dataclass(frozen=True)
class OperadicParams:
    """The nine parameters of the operadic Lax family."""

    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    c6: float
    c7: float
    c8: float
    c9: float

    @classmethod
    def from_sequence(cls, values) -> "OperadicParams":
        vals = tuple(values)
        if len(vals) != 9:
            raise ValueError(f"expected 9 parameters, got {len(vals)}")
        return cls(*vals)

    def as_tuple(self):
        return (self.c1, self.c2, self.c3, self.c4, self.c5,
                self.c6, self.c7, self.c8, self.c9)

    @property
    def admissible(self) -> bool:
        s = (self.c2 * self.c2 + self.c3 * self.c3 + self.c5 * self.c5
             + self.c6 * self.c6 + self.c7 * self.c7 + self.c8 * self.c8)
        return s != 0


def build_M(omega: float) -> np.ndarray:
    """Constant rotation generator in the 1-2 plane, scaled by omega/2."""
    return (omega / 2) * np.array([[0.0, -1.0, 0.0],
                                   [1.0, 0.0, 0.0],
                                   [0.0, 0.0, 0.0]])


def build_L(params: HOParams, point: PhasePoint) -> np.ndarray:
    w = params.omega
    return np.array([[point.p, w * point.q, 0.0],
                     [w * point.q, -point.p, 0.0],
                     [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one Lax-equation check."""

    residual: float
    tol: float
    t: float
    mode: str

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


def verify_matrix_lax(params: HOParams, t: float, dt: float = 1e-5,
                      tol: float = 1e-6) -> ResidualReport:
    """Max-norm of central-difference dL/dt minus (ML - LM) at time t."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    Lp = build_L(params, trajectory(params, t + dt))
    Lm = build_L(params, trajectory(params, t - dt))
    dL = (Lp - Lm) / (2 * dt)
    L = build_L(params, trajectory(params, t))
    M = build_M(params.omega)
    residual = float(np.max(np.abs(dL - (M @ L - L @ M))))
    return ResidualReport(residual=residual, tol=tol, t=t, mode="fd")


def build_mu(C: OperadicParams, params: HOParams, point: PhasePoint,
             require_admissible: bool = False) -> list:
    """27-component tensor mu[i][j][k] of the binary operadic Lax operation.

    Nine independent components are affine in (q, p, Q, P); antisymmetric
    partners are filled by negation and everything else is zero.  Scalar
    types of C and point are preserved (floats or Fractions).

    The non-degeneracy constraint on C is only a triviality guard (constant
    mu, e.g. C9 alone, still satisfies the Lax equation), so it is enforced
    only on request.
    """
    if require_admissible and not C.admissible:
        raise InvalidParametersError(
            "C2^2 + C3^2 + C5^2 + C6^2 + C7^2 + C8^2 must be nonzero"
        )
    w = params.omega
    q, p, Q, P = point.q, point.p, point.Q, point.P
    mu = [[[0 for _ in range(3)] for _ in range(3)] for _ in range(3)]

    def put(i, j, k, value):
        mu[i][j][k] = value
        mu[i][k][j] = -value

    put(0, 1, 2, C.c2 * p - C.c3 * w * q - C.c4)   # mu^1_23
    put(1, 0, 2, C.c2 * p - C.c3 * w * q + C.c4)   # mu^2_13
    put(0, 2, 0, C.c2 * w * q + C.c3 * p - C.c1)   # mu^1_31
    put(1, 1, 2, C.c2 * w * q + C.c3 * p + C.c1)   # mu^2_23
    put(0, 0, 1, C.c5 * P + C.c6 * Q)              # mu^1_12
    put(1, 0, 1, C.c5 * Q - C.c6 * P)              # mu^2_12
    put(2, 0, 2, C.c7 * P + C.c8 * Q)              # mu^3_13
    put(2, 1, 2, C.c7 * Q - C.c8 * P)              # mu^3_23
    put(2, 0, 1, C.c9)                             # mu^3_12
    return mu


def mu_multiop(mu) -> MultiOp:
    """Wrap a 3x3x3 tensor as a degree-2 operation."""
    return MultiOp(2, 3, np.asarray(mu, dtype=float))


def _exact_sqrt(x: Fraction) -> Fraction:
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError(f"{x} has no exact rational square root")
    return Fraction(rn, rd)


def solve_C(initial_mu, p0, sqrt_2p0=None) -> OperadicParams:
    """Invert the t = 0 tensor for C1..C9 (p0 > 0 branch).

    initial_mu is any 3x3x3 tensor antisymmetric in the lower indices; a
    non-antisymmetric input (e.g. nonzero mu^1_11) is rejected.  With
    Fraction inputs and a rational sqrt(2 p0) the result is exact.
    """
    if not p0 > 0:
        raise ValueError(f"p0 must be > 0, got {p0}")
    m = initial_mu
    for i in range(3):
        for j in range(3):
            for k in range(3):
                if m[i][j][k] != -m[i][k][j]:
                    raise NotRepresentableError(
                        f"mu^{i+1}_{{{j+1}{k+1}}} breaks antisymmetry; "
                        "tensor is outside the operadic ansatz"
                    )
    if sqrt_2p0 is not None:
        r = sqrt_2p0
    elif isinstance(p0, Fraction):
        r = _exact_sqrt(2 * p0)
    else:
        r = math.sqrt(2 * p0)
    mu31_1 = m[0][2][0]
    mu13_2 = m[1][0][2]
    mu23_1 = m[0][1][2]
    mu23_2 = m[1][1][2]
    return OperadicParams(
        c1=(mu23_2 - mu31_1) / 2,
        c2=(mu13_2 + mu23_1) / (2 * p0),
        c3=(mu23_2 + mu31_1) / (2 * p0),
        c4=(mu13_2 - mu23_1) / 2,
        c5=m[0][0][1] / r,
        c6=-m[1][0][1] / r,
        c7=m[2][0][2] / r,
        c8=-m[2][1][2] / r,
        c9=m[2][0][1],
    )


def mu_time_derivative(C: OperadicParams, params: HOParams,
                       point: PhasePoint) -> list:
    """d(mu)/dt along the flow, via qdot = p, pdot = -w^2 q,
    Qdot = (w/2) P, Pdot = -(w/2) Q."""
    w = params.omega
    q, p, Q, P = point.q, point.p, point.Q, point.P
    d = [[[0 for _ in range(3)] for _ in range(3)] for _ in range(3)]

    def put(i, j, k, value):
        d[i][j][k] = value
        d[i][k][j] = -value

    put(0, 1, 2, -C.c2 * w * w * q - C.c3 * w * p)
    put(1, 0, 2, -C.c2 * w * w * q - C.c3 * w * p)
    put(0, 2, 0, C.c2 * w * p - C.c3 * w * w * q)
    put(1, 1, 2, C.c2 * w * p - C.c3 * w * w * q)
    put(0, 0, 1, (w / 2) * (C.c6 * P - C.c5 * Q))
    put(1, 0, 1, (w / 2) * (C.c5 * P + C.c6 * Q))
    put(2, 0, 2, (w / 2) * (C.c8 * P - C.c7 * Q))
    put(2, 1, 2, (w / 2) * (C.c7 * P + C.c8 * Q))
    put(2, 0, 1, 0)
    return d


def verify_operadic_lax(C: OperadicParams, params: HOParams, t: float,
                        mode: str = "analytic", dt: float = 1e-5,
                        tol: float | None = None) -> ResidualReport:
    """Residual of dmu/dt = [M, mu] at time t.

    mode "analytic" differentiates the closed forms (chain rule); mode "fd"
    uses central differences over trajectory time.
    """
    if mode not in ("analytic", "fd"):
        raise ValueError(f"unknown mode {mode!r}")
    if tol is None:
        tol = 1e-12 if mode == "analytic" else 1e-6
    point = trajectory(params, t)
    if mode == "analytic":
        lhs = np.asarray(mu_time_derivative(C, params, point), dtype=float)
    else:
        if not dt > 0:
            raise ValueError(f"dt must be > 0, got {dt}")
        mp = np.asarray(build_mu(C, params, trajectory(params, t + dt)),
                        dtype=float)
        mm = np.asarray(build_mu(C, params, trajectory(params, t - dt)),
                        dtype=float)
        lhs = (mp - mm) / (2 * dt)
    mu_op = mu_multiop(build_mu(C, params, point))
    M_op = MultiOp(1, 3, build_M(params.omega))
    rhs = gerstenhaber(M_op, mu_op).coeffs
    residual = float(np.max(np.abs(lhs - rhs)))
    return ResidualReport(residual=residual, tol=tol, t=t, mode=mode)
