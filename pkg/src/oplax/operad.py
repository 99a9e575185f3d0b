"""Endomorphism-operad calculus on a finite-dimensional real space.

A degree-n operation is a multilinear map f: V^ated n -> V stored as the
dense coordinate tensor c[i, j1, ..., jn].  Partial composition inserts one
operation into a slot of another with the Koszul sign (-1)^(i*|g|), where
|f| = deg f - 1 is the reduced degree.  The Gerstenhaber bracket is the
graded commutator of total compositions and makes the operations a graded
Lie algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DimensionMismatchError(ValueError):
    """Operations live on spaces of different dimension."""


class InvalidOperationError(ValueError):
    """Degree, dimension, or slot index out of range."""


@dataclass(frozen=True)
class MultiOp:
    """A multilinear operation V^(x)n -> V as a coordinate tensor.

    coeffs has shape (dim,) * (degree + 1); axis 0 is the output index.
    Immutable after construction.
    """

    degree: int
    dim: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidOperationError(f"degree must be >= 1, got {self.degree}")
        if self.dim < 1:
            raise InvalidOperationError(f"dim must be >= 1, got {self.dim}")
        c = np.asarray(self.coeffs, dtype=float)
        expected = (self.dim,) * (self.degree + 1)
        if c.shape != expected:
            raise InvalidOperationError(
                f"coeffs shape {c.shape} != expected {expected}"
            )
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def reduced_degree(self) -> int:
        return self.degree - 1


def identity_op(d: int) -> MultiOp:
    """The identity 1_V as a degree-1 operation."""
    if d < 1:
        raise InvalidOperationError(f"dimension must be >= 1, got {d}")
    return MultiOp(1, d, np.eye(d))


def apply_op(f: MultiOp, *vectors: np.ndarray) -> np.ndarray:
    """Evaluate f on degree-many vectors."""
    if len(vectors) != f.degree:
        raise InvalidOperationError(
            f"expected {f.degree} vectors, got {len(vectors)}"
        )
    out = f.coeffs
    for v in vectors:
        # contract the first input axis (axis 1 after the output axis)
        out = np.tensordot(out, np.asarray(v, dtype=float), axes=([1], [0]))
    return out


def _check_dims(f: MultiOp, g: MultiOp):
    if f.dim != g.dim:
        raise DimensionMismatchError(f"dim mismatch: {f.dim} != {g.dim}")


def partial_compose(f: MultiOp, g: MultiOp, i: int) -> MultiOp:
    """f o_i g = (-1)^(i|g|) f o (1^i (x) g (x) 1^(|f|-i)), 0 <= i <= |f|."""
    _check_dims(f, g)
    if not 0 <= i <= f.reduced_degree:
        raise InvalidOperationError(
            f"slot {i} out of range 0..{f.reduced_degree}"
        )
    nf, ng = f.degree, g.degree
    sign = -1.0 if (i * g.reduced_degree) % 2 else 1.0
    # contract input slot i of f (tensor axis i+1) with the output of g
    raw = np.tensordot(f.coeffs, g.coeffs, axes=([i + 1], [0]))
    # raw axes: [out, a_1..a_i, a_(i+2)..a_nf, b_1..b_ng]; move the g-block
    # into place right after the first i surviving f-inputs
    res = np.moveaxis(raw, range(nf, nf + ng), range(i + 1, i + 1 + ng))
    return MultiOp(nf + g.reduced_degree, f.dim, sign * res)


def total_compose(f: MultiOp, g: MultiOp) -> MultiOp:
    """Sum of f o_i g over all slots i = 0..|f|."""
    _check_dims(f, g)
    acc = partial_compose(f, g, 0).coeffs.copy()
    for i in range(1, f.degree):
        acc = acc + partial_compose(f, g, i).coeffs
    return MultiOp(f.degree + g.reduced_degree, f.dim, acc)


def gerstenhaber(f: MultiOp, g: MultiOp) -> MultiOp:
    """Graded commutator [f, g] = f o g - (-1)^(|f||g|) g o f."""
    _check_dims(f, g)
    sign = -1.0 if (f.reduced_degree * g.reduced_degree) % 2 else 1.0
    fg = total_compose(f, g)
    gf = total_compose(g, f)
    return MultiOp(fg.degree, f.dim, fg.coeffs - sign * gf.coeffs)
