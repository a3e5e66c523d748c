"""General linear spring model (GLSM).

A vertical spring of stiffness ``k1`` in parallel with a pair of rigid rods of
length ``L`` restrained by two oblique springs of stiffness ``k2``.  With the
rod inner ends separated by ``2 * half_gap`` at rest the unit is nonlinear;
with ``half_gap == 0`` it collapses to a linear spring of stiffness
``k1 - 2 * k2`` which may be positive, negative or zero.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError


class StiffnessSign(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    ZERO = "Zero"


@dataclass(frozen=True)
class GlsmParams:
    k1: float
    k2: float
    rod_length: float
    half_gap: float = 0.0
    # stored for completeness; no force law uses it
    natural_length: float = 0.0

    def __post_init__(self):
        if self.k1 < 0 or self.k2 < 0:
            raise ValueError("spring stiffnesses k1, k2 must be nonnegative")
        if not self.rod_length > 0:
            raise ValueError("rod_length must be positive")
        if self.half_gap < 0:
            raise ValueError("half_gap must be nonnegative")


def _lock_margin(params: GlsmParams, y: float) -> float:
    """Return L**2 - y**2, raising DomainError at or beyond the lock."""
    L = params.rod_length
    margin = L * L - y * y
    if abs(y) >= L or margin <= 1e-15 * L * L:
        raise DomainError(f"|y|={abs(y):.6g} reaches the lock position L={L:.6g}")
    return margin


def glsm_force(params: GlsmParams, y: float) -> float:
    """Force needed to hold the roller at displacement ``y`` (|y| < L)."""
    margin = _lock_margin(params, y)
    return params.k1 * y - 2.0 * params.k2 * (1.0 - params.half_gap / math.sqrt(margin)) * y


def glsm_stiffness(params: GlsmParams, y: float) -> float:
    """Tangent stiffness d(force)/dy; diverges as |y| -> L when half_gap > 0."""
    margin = _lock_margin(params, y)
    L = params.rod_length
    correction = 2.0 * params.k2 * params.half_gap * L * L / margin**1.5
    return params.k1 - 2.0 * params.k2 + correction


def effective_stiffness(params: GlsmParams) -> float:
    """Linear stiffness K = k1 - 2*k2 used by boundary synthesis."""
    return params.k1 - 2.0 * params.k2


def classify_stiffness(params: GlsmParams) -> StiffnessSign:
    # exact comparison on purpose: near-zero designs are kept as the caller built them
    twice_k2 = 2.0 * params.k2
    if params.k1 > twice_k2:
        return StiffnessSign.POSITIVE
    if params.k1 < twice_k2:
        return StiffnessSign.NEGATIVE
    return StiffnessSign.ZERO
