"""Free, undamped motion of a mass on a synthesized track.

Along a synthesized branch K Y Y' = P(X), so the equation of motion reduces to
M X'' + P(X) = 0.  Integration uses fixed-step velocity Verlet and stops when
the mass would leave the branch domain.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateBranch, DomainError
from .force import eval_force, potential
from .synthesis import (
    DEFAULT_NUMERICS,
    BranchId,
    BranchStatus,
    DesignSpec,
    Domain,
    Numerics,
    compute_domain,
    roundtrip_force,
)


class Termination(enum.Enum):
    COMPLETED = "Completed"
    LOCK_EVENT = "LockEvent"
    DOMAIN_EXIT = "DomainExit"


@dataclass(frozen=True)
class SimConfig:
    mass: float
    dt: float
    t_end: float
    x0: float = 0.0
    v0: float = 0.0

    def __post_init__(self):
        if not self.mass > 0:
            raise ConfigError("mass must be positive")
        if not self.dt > 0:
            raise ConfigError("dt must be positive")
        if not self.t_end >= 0:
            raise ConfigError("t_end must be nonnegative")


@dataclass(frozen=True)
class SimResult:
    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    e: np.ndarray
    termination: Termination
    # time of the lock / domain crossing, None when the run completed
    event_time: float | None = None

    def rows(self):
        return np.column_stack([self.t, self.x, self.v, self.e])


def restoring_force(
    spec: DesignSpec, bid: BranchId, x: float, numerics: Numerics = DEFAULT_NUMERICS
) -> float:
    """Force the track exerts on the mass, -K Y Y' = -P(x)."""
    return -roundtrip_force(spec, bid, x, numerics)


def energy_forms(spec: DesignSpec, x: float, v: float, mass: float) -> tuple[float, float]:
    """Total energy as (1/2 M V^2 + S(X), 1/2 M V^2 + 1/2 K (Y^2 - delta^2))."""
    u = spec.u(x)
    if not 0.0 <= u < spec.rod_length**2:
        raise DomainError(f"x={x:.6g} is off every branch of this design (U={u:.6g})")
    kinetic = 0.5 * mass * v * v
    via_potential = kinetic + potential(spec.force, x)
    via_spring = kinetic + 0.5 * spec.k_eff * (u - spec.delta**2)
    return via_potential, via_spring


def total_energy(spec: DesignSpec, x: float, v: float, mass: float) -> float:
    e_s, e_y = energy_forms(spec, x, v, mass)
    if abs(e_s - e_y) > 1e-12:
        raise ArithmeticError(f"energy forms disagree by {abs(e_s - e_y):.3g} J")
    return e_s


def _verlet_step(spec: DesignSpec, x: float, v: float, a: float, h: float, mass: float):
    x_new = x + v * h + 0.5 * a * h * h
    a_new = -eval_force(spec.force, x_new) / mass
    v_new = v + 0.5 * (a + a_new) * h
    return x_new, v_new, a_new


def _exit_kind(dom: Domain, x: float) -> Termination:
    kind = dom.hi_kind if x > dom.hi or (x == dom.hi and not dom.hi_closed) else dom.lo_kind
    return Termination.LOCK_EVENT if kind == "lock" else Termination.DOMAIN_EXIT


def simulate(
    spec: DesignSpec,
    bid: BranchId,
    cfg: SimConfig,
    numerics: Numerics = DEFAULT_NUMERICS,
) -> SimResult:
    """Integrate M X'' = -P(X) from (x0, v0) on branch ``bid``.

    A step that would leave the domain is shortened by bisection in time
    until the crossing is pinned within dt * 1e-6; the last admissible state
    is recorded and the run ends with LockEvent (rod lock) or DomainExit.
    """
    dom, status = compute_domain(spec, bid, numerics)
    if status is not BranchStatus.NON_DEGENERATE:
        raise DegenerateBranch(f"{bid.name} is {status.value}; cannot simulate")
    if cfg.x0 not in dom:
        raise ConfigError(f"x0={cfg.x0:.6g} outside the {bid.name} domain")

    m, dt = cfg.mass, cfg.dt
    n_steps = int(math.ceil(cfg.t_end / dt - 1e-9)) if cfg.t_end > 0 else 0
    ts = np.empty(n_steps + 1)
    xs = np.empty(n_steps + 1)
    vs = np.empty(n_steps + 1)
    ts[0], xs[0], vs[0] = 0.0, cfg.x0, cfg.v0

    x, v = cfg.x0, cfg.v0
    a = -eval_force(spec.force, x) / m
    termination = Termination.COMPLETED
    event_time = None
    n = n_steps
    for i in range(1, n_steps + 1):
        x_new, v_new, a_new = _verlet_step(spec, x, v, a, dt, m)
        if x_new in dom:
            x, v, a = x_new, v_new, a_new
            ts[i], xs[i], vs[i] = i * dt, x, v
            continue
        # locate the crossing inside this step
        t_in, t_out = 0.0, dt
        while t_out - t_in > dt * 1e-6:
            mid = 0.5 * (t_in + t_out)
            if x + v * mid + 0.5 * a * mid * mid in dom:
                t_in = mid
            else:
                t_out = mid
        termination = _exit_kind(dom, x_new)
        t_prev = (i - 1) * dt
        event_time = t_prev + t_out
        if t_in > 0.0:
            x, v, a = _verlet_step(spec, x, v, a, t_in, m)
            ts[i], xs[i], vs[i] = t_prev + t_in, x, v
            n = i
        else:
            n = i - 1
        break

    ts, xs, vs = ts[: n + 1], xs[: n + 1], vs[: n + 1]
    es = 0.5 * m * vs**2 + potential(spec.force, xs)
    return SimResult(ts, xs, vs, np.asarray(es, dtype=float), termination, event_time)


def period_from_crossings(t: np.ndarray, x: np.ndarray) -> float:
    """Mean period from successive downward zero crossings (linear interpolation)."""
    idx = np.nonzero((x[:-1] > 0) & (x[1:] <= 0))[0]
    if len(idx) < 2:
        raise ValueError("need at least two downward zero crossings")
    tc = t[idx] + (t[idx + 1] - t[idx]) * x[idx] / (x[idx] - x[idx + 1])
    return float((tc[-1] - tc[0]) / (len(tc) - 1))
