"""Bianchi types II, VII_a, III_{a=1}, VI_{a!=1} and their dynamical
deformations along the oscillator flow.

The three-dimensional structure equations are parameterized as

    [e1, e2] = -alpha e2 + n3 e3,  [e2, e3] = n1 e1,  [e3, e1] = n2 e2 + alpha e3.

Deformations are produced two independent ways: through the 9-parameter
operadic family (solve_C then build_mu along the trajectory) and through
stored closed forms; the test suite asserts the two agree.  Type II
(Heisenberg) is data-only: it has no deformation row.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .lax import OperadicParams, build_mu, solve_C
from .oscillator import HOParams, trajectory


class UnsupportedLabelError(ValueError):
    """No deformation exists for this Bianchi type."""


class BianchiType(Enum):
    II = "II"
    VIIA = "VIIa"
    IIIA1 = "IIIa1"
    VIA = "VIa"


@dataclass(frozen=True)
class BianchiLabel:
    """Bianchi type plus the parameter a where the family needs one."""

    type: BianchiType
    a: float | None = None

    def __post_init__(self):
        if self.type in (BianchiType.VIIA, BianchiType.VIA):
            if self.a is None:
                raise ValueError(f"type {self.type.value} requires parameter a")
            if not self.a > 0:
                raise ValueError(f"parameter a must be > 0, got {self.a}")
            if self.type is BianchiType.VIA and self.a == 1:
                raise ValueError("type VIa requires a != 1")
        elif self.a is not None:
            raise ValueError(f"type {self.type.value} takes no parameter a")

    @property
    def a_value(self):
        """Effective a: the declared parameter, or 1 for III_{a=1}."""
        return 1 if self.type is BianchiType.IIIA1 else self.a


@dataclass(frozen=True)
class StructureConstants:
    """3x3x3 tensor mu^i_{jk}, antisymmetric in (j, k)."""

    array: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.array)
        if arr.shape != (3, 3, 3):
            raise ValueError(f"expected shape (3, 3, 3), got {arr.shape}")
        object.__setattr__(self, "array", arr)

    def component(self, i: int, j: int, k: int):
        """1-based lookup matching the mu^i_{jk} notation."""
        return self.array[i - 1][j - 1][k - 1]


# (alpha, n1, n2, n3) with a the family parameter where applicable
_PARAMS = {
    BianchiType.II: (0, 1, 0, 0),
    BianchiType.VIIA: ("a", 0, 1, 1),
    BianchiType.IIIA1: (1, 0, 1, -1),
    BianchiType.VIA: ("a", 0, 1, -1),
}


def structure_constants(label: BianchiLabel) -> StructureConstants:
    """The structure tensor of the given Bianchi type at t = 0."""
    alpha, n1, n2, n3 = _PARAMS[label.type]
    if alpha == "a":
        alpha = label.a
    m = [[[0 for _ in range(3)] for _ in range(3)] for _ in range(3)]

    def put(i, j, k, value):
        m[i][j][k] = value
        m[i][k][j] = -value

    put(1, 0, 1, -alpha)   # mu^2_12
    put(2, 0, 1, n3)       # mu^3_12
    put(0, 1, 2, n1)       # mu^1_23
    put(1, 2, 0, n2)       # mu^2_31
    put(2, 2, 0, alpha)    # mu^3_31
    return StructureConstants(np.array(m))


_DEFORMABLE = (BianchiType.VIIA, BianchiType.IIIA1, BianchiType.VIA)


def label_params(label: BianchiLabel, p0, sqrt_2p0=None) -> OperadicParams:
    """Operadic parameters whose t = 0 tensor is the Bianchi row."""
    if label.type not in _DEFORMABLE:
        raise UnsupportedLabelError(
            f"type {label.type.value} has no dynamical deformation"
        )
    sc = structure_constants(label)
    return solve_C(sc.array.tolist(), p0, sqrt_2p0=sqrt_2p0)


def dynamical_deformation(label: BianchiLabel, params: HOParams,
                          t: float) -> StructureConstants:
    """Deformed structure tensor at time t, generated via the operadic family."""
    C = label_params(label, params.p0)
    point = trajectory(params, t)
    return StructureConstants(np.asarray(build_mu(C, params, point),
                                         dtype=float))


def deformation_closed_form(label: BianchiLabel, params: HOParams,
                            t: float) -> StructureConstants:
    """Deformed structure tensor from the stored closed forms (independent
    of the operadic generation path)."""
    if label.type not in _DEFORMABLE:
        raise UnsupportedLabelError(
            f"type {label.type.value} has no dynamical deformation"
        )
    a = label.a_value
    n3 = 1 if label.type is BianchiType.VIIA else -1
    pt = trajectory(params, t)
    p0 = params.p0
    root = np.sqrt(2 * p0)
    w = params.omega
    m = [[[0.0 for _ in range(3)] for _ in range(3)] for _ in range(3)]

    def put(i, j, k, value):
        m[i][j][k] = value
        m[i][k][j] = -value

    put(0, 0, 1, a * pt.Q / root)             # mu^1_12
    put(1, 0, 1, -a * pt.P / root)            # mu^2_12
    put(2, 0, 1, float(n3))                   # mu^3_12
    put(0, 1, 2, (p0 - pt.p) / (2 * p0))      # mu^1_23
    put(1, 1, 2, -w * pt.q / (2 * p0))        # mu^2_23
    put(2, 1, 2, -a * pt.Q / root)            # mu^3_23
    put(0, 2, 0, -w * pt.q / (2 * p0))        # mu^1_31
    put(1, 2, 0, (pt.p + p0) / (2 * p0))      # mu^2_31
    put(2, 2, 0, a * pt.P / root)             # mu^3_31
    return StructureConstants(np.array(m))


def classical_jacobiator(sc: StructureConstants, x, y, z) -> np.ndarray:
    """J^i = mu^i_{js} x^j mu^s_{kl} y^k z^l + cyclic permutations of x,y,z."""
    m = np.asarray(sc.array, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    out = np.zeros(3)
    for u, v, w_ in ((x, y, z), (y, z, x), (z, x, y)):
        out += np.einsum("ijs,j,skl,k,l->i", m, u, m, v, w_)
    return out
