"""Roller-trajectory synthesis and configuration census.

A linear spring of stiffness K, pre-deformed by delta, reproduces a target
force P(X) when the roller follows

    Y(X) = +/- sqrt(U(X)),   U(X) = delta**2 + 2 S(X) / K,

which solves K Y Y' = P with Y(0) = delta.  The track is usable where
0 <= U < L**2: U = 0 is the spring's natural length (closed end), U = L**2
is the rod lock (open end).

Each design has eight candidate branches, named Y<s><n>: s = 1 for the
upper (+) root and 2 for the lower (-) root; n = 1..4 for (delta != 0, K > 0),
(delta != 0, K < 0), (delta = 0, K > 0), (delta = 0, K < 0).
"""
from __future__ import annotations

import enum
import functools
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateBranch, DomainError, SearchError, SpecError, SpecMismatch
from .force import PotentialClass, TargetForce, classify_potential, eval_force, force_range, potential
from .glsm import StiffnessSign

log = logging.getLogger(__name__)

_SCAN_CHUNK = 1024


class Sign(enum.Enum):
    UPPER = 1
    LOWER = -1


class DeformationCase(enum.Enum):
    PRE_DEFORMED = "PreDeformed"
    ZERO_DEFORMED = "ZeroDeformed"


class BranchStatus(enum.Enum):
    NON_DEGENERATE = "NonDegenerate"
    DEGENERATE_POINT = "DegeneratePoint"
    NONEXISTENT = "Nonexistent"


@dataclass(frozen=True)
class Numerics:
    """Domain-search settings.  ``None`` means the default scaled by L."""

    scan_step: float | None = None
    scan_horizon: float | None = None
    bisect_tol: float | None = None
    n_samples: int = 1001

    def step(self, L: float) -> float:
        return self.scan_step if self.scan_step is not None else 1e-3 * L

    def horizon(self, L: float) -> float:
        return self.scan_horizon if self.scan_horizon is not None else 1e3 * L

    def tol(self, L: float) -> float:
        return self.bisect_tol if self.bisect_tol is not None else 1e-12 * max(L, 1.0)


DEFAULT_NUMERICS = Numerics()


@dataclass(frozen=True)
class DesignSpec:
    force: TargetForce
    k_eff: float
    delta: float
    rod_length: float

    def __post_init__(self):
        if not self.rod_length > 0:
            raise SpecError("rod_length must be positive")
        if self.k_eff == 0:
            raise SpecError("k_eff must be nonzero: stiffness range is {K | K != 0}")
        if not abs(self.delta) < self.rod_length:
            raise SpecError(
                f"|delta|={abs(self.delta):.6g} must be below rod_length={self.rod_length:.6g} "
                "(-L < Y(0) < L)"
            )

    @property
    def case(self) -> DeformationCase:
        return DeformationCase.ZERO_DEFORMED if self.delta == 0 else DeformationCase.PRE_DEFORMED

    @property
    def k_sign(self) -> StiffnessSign:
        return StiffnessSign.POSITIVE if self.k_eff > 0 else StiffnessSign.NEGATIVE

    def u(self, x):
        """U(x) = delta**2 + 2 S(x) / K, the squared roller offset."""
        return self.delta**2 + 2.0 * potential(self.force, x) / self.k_eff


_CASE_INDEX = {
    (DeformationCase.PRE_DEFORMED, StiffnessSign.POSITIVE): 1,
    (DeformationCase.PRE_DEFORMED, StiffnessSign.NEGATIVE): 2,
    (DeformationCase.ZERO_DEFORMED, StiffnessSign.POSITIVE): 3,
    (DeformationCase.ZERO_DEFORMED, StiffnessSign.NEGATIVE): 4,
}
_INDEX_CASE = {v: k for k, v in _CASE_INDEX.items()}


@dataclass(frozen=True)
class BranchId:
    sign: Sign
    case: DeformationCase
    k_sign: StiffnessSign

    def __post_init__(self):
        if self.k_sign is StiffnessSign.ZERO:
            raise ValueError("branches exist only for nonzero stiffness")

    @property
    def name(self) -> str:
        row = 1 if self.sign is Sign.UPPER else 2
        return f"Y{row}{_CASE_INDEX[(self.case, self.k_sign)]}"

    @classmethod
    def from_name(cls, name: str) -> "BranchId":
        if len(name) != 3 or name[0] != "Y" or name[1] not in "12" or name[2] not in "1234":
            raise ValueError(f"unknown branch name {name!r}; expected Y11..Y24")
        sign = Sign.UPPER if name[1] == "1" else Sign.LOWER
        case, k_sign = _INDEX_CASE[int(name[2])]
        return cls(sign, case, k_sign)

    @classmethod
    def for_spec(cls, spec: DesignSpec, sign: Sign | None = None) -> "BranchId":
        """Branch solving the initial value problem Y(0) = delta for ``spec``."""
        if sign is None:
            sign = Sign.LOWER if spec.delta < 0 else Sign.UPPER
        return cls(sign, spec.case, spec.k_sign)

    def __str__(self):
        return self.name


BRANCH_NAMES = ("Y11", "Y12", "Y13", "Y14", "Y21", "Y22", "Y23", "Y24")


@dataclass(frozen=True)
class Domain:
    """Interval (lo, hi) with endpoint openness.  Infinite ends are open."""

    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool
    lo_kind: str = "zero"
    hi_kind: str = "zero"

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x: float) -> bool:
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above and below

    @classmethod
    def point(cls) -> "Domain":
        return cls(0.0, 0.0, True, True, "point", "point")


def _check_consistent(spec: DesignSpec, bid: BranchId) -> None:
    if bid.case is not spec.case or bid.k_sign is not spec.k_sign:
        raise SpecMismatch(
            f"branch {bid.name} needs ({bid.case.value}, K {bid.k_sign.value}) but the design "
            f"has delta={spec.delta:.6g}, K={spec.k_eff:.6g}"
        )


def _admissible(spec: DesignSpec, x):
    u = spec.u(x)
    return (u >= 0.0) & (u < spec.rod_length**2)


def _scan_side(spec: DesignSpec, direction: int, numerics: Numerics) -> tuple[float, bool, str]:
    """Walk outward from 0 and return (boundary, closed, kind) on one side."""
    L = spec.rod_length
    h = numerics.step(L)
    horizon = numerics.horizon(L)
    tol = numerics.tol(L)
    f_lo, f_hi = force_range(spec.force)
    limit = min(horizon, f_hi if direction > 0 else -f_lo)

    x_in = 0.0
    x_out = None
    while x_out is None:
        offsets = x_in + direction * h * np.arange(1, _SCAN_CHUNK + 1)
        beyond = np.abs(offsets) >= limit
        if beyond.any():
            offsets = offsets[: int(np.argmax(beyond)) + 1]
            offsets[-1] = direction * limit
        ok = _admissible(spec, offsets)
        if not ok.all():
            first_bad = int(np.argmin(ok))
            x_out = float(offsets[first_bad])
            if first_bad > 0:
                x_in = float(offsets[first_bad - 1])
        elif beyond.any():
            edge = direction * limit
            if limit == horizon:
                return direction * math.inf, False, "unbounded"
            return edge, True, "range"
        else:
            x_in = float(offsets[-1])

    n_iter = 0
    while abs(x_out - x_in) > tol:
        mid = 0.5 * (x_in + x_out)
        if mid == x_in or mid == x_out:
            break
        if _admissible(spec, mid):
            x_in = mid
        else:
            x_out = mid
        n_iter += 1
        if n_iter > 400:
            raise SearchError(f"bisection failed to converge near x={x_in:.6g}")

    if spec.u(x_out) < 0.0:
        return x_in, True, "zero"
    return x_out, False, "lock"


@functools.lru_cache(maxsize=4096)
def _domain_cached(spec: DesignSpec, numerics: Numerics) -> tuple[Domain, BranchStatus]:
    L = spec.rod_length
    if not _admissible(spec, 0.0):
        return Domain.point(), BranchStatus.NONEXISTENT
    hi, hi_closed, hi_kind = _scan_side(spec, +1, numerics)
    lo, lo_closed, lo_kind = _scan_side(spec, -1, numerics)
    dom = Domain(lo, hi, lo_closed, hi_closed, lo_kind, hi_kind)
    if dom.width < 1e-9 * max(L, 1.0):
        return Domain.point(), BranchStatus.DEGENERATE_POINT
    if spec.delta == 0 and _flat(spec, dom, numerics):
        # the roller never leaves Y = 0: no track beyond the point configuration
        return dom, BranchStatus.DEGENERATE_POINT
    return dom, BranchStatus.NON_DEGENERATE


def _flat(spec: DesignSpec, dom: Domain, numerics: Numerics) -> bool:
    lo, hi = _finite(dom, numerics.horizon(spec.rod_length))
    return bool(np.all(spec.u(np.linspace(lo, hi, 1001)) == 0.0))


def _finite(dom: Domain, horizon: float) -> tuple[float, float]:
    return max(dom.lo, -horizon), min(dom.hi, horizon)


def compute_domain(
    spec: DesignSpec, bid: BranchId, numerics: Numerics = DEFAULT_NUMERICS
) -> tuple[Domain, BranchStatus]:
    """Maximal interval around X = 0 where the branch is admissible.

    Upper and lower roots share a domain; only the spec decides it.  A domain
    narrower than 1e-9 * max(L, 1) is reported as the point {0}.
    """
    _check_consistent(spec, bid)
    return _domain_cached(spec, numerics)


def branch_value(
    spec: DesignSpec,
    bid: BranchId,
    x: float,
    numerics: Numerics = DEFAULT_NUMERICS,
) -> float:
    """Roller offset Y(x) on branch ``bid``."""
    _check_consistent(spec, bid)
    dom, _ = _domain_cached(spec, numerics)
    if x not in dom:
        raise DomainError(f"x={x:.6g} outside the {bid.name} domain [{dom.lo:.6g}, {dom.hi:.6g}]")
    return bid.sign.value * math.sqrt(max(spec.u(x), 0.0))


def _roundtrip(spec: DesignSpec, y, x):
    p = eval_force(spec.force, x)
    near_zero = np.abs(y) <= 1e-12 * spec.rod_length
    with np.errstate(divide="ignore", invalid="ignore"):
        slope = p / (spec.k_eff * np.where(near_zero, 1.0, y))
        out = spec.k_eff * y * slope
    return np.where(near_zero, p, out)


def roundtrip_force(
    spec: DesignSpec,
    bid: BranchId,
    x: float,
    numerics: Numerics = DEFAULT_NUMERICS,
) -> float:
    """K * Y * Y' rebuilt from the synthesized branch; equals P(x).

    At Y = 0 the track has a vertical tangent and the product is replaced by
    its continuous limit P(x).
    """
    y = branch_value(spec, bid, x, numerics)
    return float(_roundtrip(spec, y, x))


def sample_branch(
    spec: DesignSpec,
    bid: BranchId,
    n: int = 1001,
    numerics: Numerics = DEFAULT_NUMERICS,
) -> np.ndarray:
    """Return an (n, 3) array of (X, Y, U) rows spread over the branch domain."""
    if n < 2:
        raise ValueError("need at least 2 samples")
    dom, status = compute_domain(spec, bid, numerics)
    if status is not BranchStatus.NON_DEGENERATE:
        raise DegenerateBranch(f"{bid.name} is {status.value}; nothing to sample")
    lo, hi = _finite(dom, numerics.horizon(spec.rod_length))
    pull = 1e-9 * (hi - lo)
    if not (dom.lo_closed and math.isfinite(dom.lo)):
        lo += pull
    if not (dom.hi_closed and math.isfinite(dom.hi)):
        hi -= pull
    x = np.linspace(lo, hi, n)
    u = np.maximum(spec.u(x), 0.0)
    y = bid.sign.value * np.sqrt(u)
    return np.column_stack([x, y, u])


@dataclass(frozen=True)
class TrajectoryBranch:
    id: BranchId
    spec: DesignSpec
    domain: Domain
    status: BranchStatus
    numerics: Numerics = field(default=DEFAULT_NUMERICS, compare=False)

    @property
    def name(self) -> str:
        return self.id.name

    def value(self, x: float) -> float:
        return branch_value(self.spec, self.id, x, self.numerics)

    def sample(self, n: int | None = None) -> np.ndarray:
        return sample_branch(self.spec, self.id, n or self.numerics.n_samples, self.numerics)


def make_branch(spec: DesignSpec, bid: BranchId, numerics: Numerics = DEFAULT_NUMERICS) -> TrajectoryBranch:
    dom, status = compute_domain(spec, bid, numerics)
    return TrajectoryBranch(bid, spec, dom, status, numerics)


def family_spec(
    force: TargetForce, k_mag: float, delta_mag: float, rod_length: float, bid: BranchId
) -> DesignSpec:
    """Member of the (|K|, |delta|) design family that carries branch ``bid``.

    Lower pre-deformed branches get delta = -|delta| so that Y(0) = delta.
    """
    k = k_mag if bid.k_sign is StiffnessSign.POSITIVE else -k_mag
    if bid.case is DeformationCase.ZERO_DEFORMED:
        return DesignSpec(force, k, 0.0, rod_length)
    if delta_mag == 0:
        raise SpecError(f"{bid.name} needs a nonzero pre-deformation delta")
    return DesignSpec(force, k, bid.sign.value * abs(delta_mag), rod_length)


@dataclass(frozen=True)
class ConfigurationCensus:
    branches: dict[str, TrajectoryBranch]
    strict_count: int
    lenient_count: int
    potential_class: PotentialClass

    def live(self) -> list[TrajectoryBranch]:
        return [b for b in self.branches.values() if b.status is BranchStatus.NON_DEGENERATE]


def enumerate_configurations(
    force: TargetForce,
    k_mag: float,
    delta_mag: float,
    rod_length: float,
    numerics: Numerics = DEFAULT_NUMERICS,
) -> ConfigurationCensus:
    """Build all eight candidate branches for one (|K|, |delta|, L) family.

    The strict count keeps only branches with a real track.  The lenient count
    adds the degenerate point configuration once, since every degenerate
    branch collapses onto the same point Y = 0.
    """
    if not k_mag > 0:
        raise SpecError("k_mag must be positive")
    if not 0 < delta_mag < rod_length:
        raise SpecError(
            "the census needs 0 < |delta| < rod_length to build the pre-deformed branches"
        )

    branches = {}
    for name in BRANCH_NAMES:
        bid = BranchId.from_name(name)
        spec = family_spec(force, k_mag, delta_mag, rod_length, bid)
        branches[name] = make_branch(spec, bid, numerics)

    strict = sum(b.status is BranchStatus.NON_DEGENERATE for b in branches.values())
    degenerate = any(b.status is BranchStatus.DEGENERATE_POINT for b in branches.values())
    lenient = strict + int(degenerate)

    # classify S over the region reachable by the zero-deformation tracks
    horizon = numerics.horizon(rod_length)
    lo, hi = 0.0, 0.0
    for name in ("Y13", "Y14"):
        a, b = _finite(branches[name].domain, horizon)
        lo, hi = min(lo, a), max(hi, b)
    pclass = classify_potential(force, (lo, hi))

    for b in branches.values():
        log.debug("%s: %s on [%.6g, %.6g]", b.name, b.status.value, b.domain.lo, b.domain.hi)
    return ConfigurationCensus(branches, strict, lenient, pclass)


def energy_residual(spec: DesignSpec, x, y):
    """K (Y**2 - delta**2) / 2 - S(X); zero along any synthesized branch."""
    return 0.5 * spec.k_eff * (np.asarray(y) ** 2 - spec.delta**2) - potential(spec.force, x)
