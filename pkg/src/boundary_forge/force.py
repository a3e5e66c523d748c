"""Target stiffness forces P(X) and their potentials S(X) = int_0^X P dX."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import RangeError


@dataclass(frozen=True)
class Polynomial:
    """P(X) = sum c_k X**k with coefficients in ascending powers."""

    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Sequence[float]):
        coeffs = tuple(float(c) for c in coeffs)
        if not coeffs:
            coeffs = (0.0,)
        object.__setattr__(self, "coeffs", coeffs)


@dataclass(frozen=True)
class Duffing:
    """Pure cubic force P(X) = k3 * X**3 (softening for k3 < 0)."""

    k3: float

    def as_polynomial(self) -> Polynomial:
        return Polynomial((0.0, 0.0, 0.0, self.k3))


@dataclass(frozen=True)
class Tabulated:
    """Piecewise-linear force through sorted (X, P) samples.

    The potential is the exact integral of the interpolant, anchored at X = 0,
    so S' = P holds between nodes.
    """

    x: tuple[float, ...]
    p: tuple[float, ...]

    def __init__(self, samples: Sequence[Sequence[float]]):
        pts = [(float(a), float(b)) for a, b in samples]
        if len(pts) < 2:
            raise ValueError("tabulated force needs at least 2 samples")
        xs = [a for a, _ in pts]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("tabulated X values must be strictly increasing")
        if not xs[0] <= 0.0 <= xs[-1]:
            raise ValueError("tabulated sample range must include X = 0")
        object.__setattr__(self, "x", tuple(xs))
        object.__setattr__(self, "p", tuple(b for _, b in pts))
        # cumulative trapezoid from the first node; shifted so S(0) = 0
        xa = np.asarray(xs)
        pa = np.asarray(self.p)
        cum = np.concatenate(([0.0], np.cumsum(0.5 * (pa[1:] + pa[:-1]) * np.diff(xa))))
        object.__setattr__(self, "_cum", cum)
        object.__setattr__(self, "_offset", float(self._raw_integral(0.0)))

    def _locate(self, x):
        xa = np.asarray(x, dtype=float)
        if np.any((xa < self.x[0]) | (xa > self.x[-1])):
            raise RangeError(f"x outside tabulated range [{self.x[0]:.6g}, {self.x[-1]:.6g}]")
        i = np.searchsorted(self.x, xa, side="right") - 1
        return np.clip(i, 0, len(self.x) - 2)

    def _interp(self, i, x):
        xs = np.asarray(self.x)
        ps = np.asarray(self.p)
        x0, x1 = xs[i], xs[i + 1]
        p0, p1 = ps[i], ps[i + 1]
        return p0 + (p1 - p0) * (x - x0) / (x1 - x0)

    def _raw_integral(self, x):
        i = self._locate(x)
        x0 = np.asarray(self.x)[i]
        return self._cum[i] + 0.5 * (np.asarray(self.p)[i] + self._interp(i, x)) * (x - x0)


TargetForce = Union[Polynomial, Duffing, Tabulated]


class PotentialClass(enum.Enum):
    NON_NEGATIVE = "NonNegative"
    NON_POSITIVE = "NonPositive"
    SIGN_CHANGING = "SignChanging"
    IDENTICALLY_ZERO = "IdenticallyZero"


def _horner(coeffs: Sequence[float], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _antiderivative(coeffs: Sequence[float]) -> tuple[float, ...]:
    return (0.0,) + tuple(c / (k + 1) for k, c in enumerate(coeffs))


def _coeffs(f: TargetForce) -> tuple[float, ...] | None:
    if isinstance(f, Duffing):
        return f.as_polynomial().coeffs
    if isinstance(f, Polynomial):
        return f.coeffs
    return None


def _scalar(v):
    return float(v) if np.ndim(v) == 0 else v


def eval_force(f: TargetForce, x: float) -> float:
    """Evaluate P(x); ``x`` may also be an array."""
    coeffs = _coeffs(f)
    if coeffs is not None:
        return _horner(coeffs, x)
    if isinstance(f, Tabulated):
        return _scalar(f._interp(f._locate(x), x))
    raise TypeError(f"unsupported force type {type(f).__name__}")


def potential(f: TargetForce, x: float) -> float:
    """Evaluate S(x) = int_0^x P dX (exact for polynomials)."""
    coeffs = _coeffs(f)
    if coeffs is not None:
        return _horner(_antiderivative(coeffs), x)
    if isinstance(f, Tabulated):
        s = np.where(np.asarray(x) == 0.0, 0.0, f._raw_integral(x) - f._offset)
        return _scalar(s)
    raise TypeError(f"unsupported force type {type(f).__name__}")


def force_range(f: TargetForce) -> tuple[float, float]:
    """Interval on which the force is defined."""
    if isinstance(f, Tabulated):
        return f.x[0], f.x[-1]
    return -np.inf, np.inf


def classify_potential(
    f: TargetForce,
    probe_range: tuple[float, float],
    n_probe: int = 1001,
) -> PotentialClass:
    """Classify the sign pattern of S over uniformly spaced probes.

    Values with |S| below 1e-12 of the largest probed |S| count as zero.
    """
    lo, hi = probe_range
    if n_probe < 101:
        raise ValueError("n_probe must be at least 101")
    if not lo <= 0.0 <= hi:
        raise ValueError("probe_range must contain 0")
    s = np.asarray(potential(f, np.linspace(lo, hi, n_probe)), dtype=float)
    scale = float(np.max(np.abs(s)))
    if scale == 0.0:
        return PotentialClass.IDENTICALLY_ZERO
    band = 1e-12 * scale
    has_pos = bool(np.any(s > band))
    has_neg = bool(np.any(s < -band))
    if has_pos and has_neg:
        return PotentialClass.SIGN_CHANGING
    return PotentialClass.NON_NEGATIVE if has_pos else PotentialClass.NON_POSITIVE
