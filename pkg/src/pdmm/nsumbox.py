"""Transfer matrix standing in for the entangled-servers quantum channel.

N servers each contribute two field symbols (an X operand and a Z
operand); the receiver recovers N symbols through the linear map
M = [0 I] [G H]^-1, where G spans the stabilized directions and must be
symplectic self-orthogonal.  The map is exact for stabilizer-based
protocols, so no state-vector simulation is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldContext, SingularMatrixError
from .grs import ShapeMismatchError, sso_check

__all__ = [
    "TransferMatrix",
    "NotSSOError",
    "SingularStackError",
    "build_transfer",
    "apply_box",
]


class NotSSOError(ValueError):
    """The stabilizer block fails the symplectic self-orthogonality check."""


class SingularStackError(ValueError):
    """[G H] is not invertible, so no transfer matrix exists."""


@dataclass(frozen=True)
class TransferMatrix:
    """Receiver map m with its stabilizer block g and readout block h.

    Invariants (checked at construction): g is SSO, [g h] invertible,
    m g = 0 and m h = I.  Inputs in the column span of g vanish; the
    receiver sees exactly the h-coordinates.
    """

    ctx: FieldContext
    m: np.ndarray
    g: np.ndarray
    h: np.ndarray

    @property
    def n(self) -> int:
        return self.m.shape[0]


def build_transfer(ctx: FieldContext, g, h) -> TransferMatrix:
    """Assemble M = [0 I] [G H]^-1 after validating both blocks."""
    g = ctx.asarray(g)
    h = ctx.asarray(h)
    if g.ndim != 2 or h.ndim != 2 or g.shape != h.shape or g.shape[0] != 2 * g.shape[1]:
        raise ShapeMismatchError(f"need two 2N x N blocks, got {g.shape} and {h.shape}")
    if not sso_check(ctx, g):
        raise NotSSOError("stabilizer block is not symplectic self-orthogonal")
    n = g.shape[1]
    stack = np.hstack([g, h])
    try:
        inv = ctx.mat_inverse(stack)
    except SingularMatrixError as exc:
        raise SingularStackError("[G H] is singular") from exc
    m = inv[n:, :]  # [0_N I_N] [G H]^-1
    if np.any(ctx.matmul(m, g) != 0):
        raise AssertionError("transfer law m g = 0 failed")
    if np.any(ctx.matmul(m, h) != ctx.identity(n)):
        raise AssertionError("transfer law m h = I failed")
    return TransferMatrix(ctx=ctx, m=m, g=g, h=h)


def apply_box(tm: TransferMatrix, x) -> np.ndarray:
    """Receive y = m x for a 2N-vector (or a 2N x k batch) of operands."""
    x = tm.ctx.asarray(x)
    if x.shape[0] != 2 * tm.n:
        raise ShapeMismatchError(f"operand length {x.shape[0]}, expected {2 * tm.n}")
    return tm.ctx.matmul(tm.m, x)
