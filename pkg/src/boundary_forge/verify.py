"""Algebraic checks that a synthesized track reproduces its target force."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .force import eval_force
from .synthesis import (
    DEFAULT_NUMERICS,
    BranchId,
    DesignSpec,
    Numerics,
    Sign,
    _roundtrip,
    compute_domain,
    energy_residual,
    sample_branch,
)


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    passed: bool
    bound: float = 1.0

    def as_dict(self):
        return {"check": self.name, "residual": self.residual, "bound": self.bound, "pass": self.passed}


def _energy_scale(spec: DesignSpec) -> float:
    return max(1.0, abs(spec.k_eff) * spec.rod_length**2)


def _mirror(spec: DesignSpec, bid: BranchId) -> tuple[DesignSpec, BranchId]:
    other = Sign.LOWER if bid.sign is Sign.UPPER else Sign.UPPER
    return DesignSpec(spec.force, spec.k_eff, -spec.delta, spec.rod_length), BranchId(other, bid.case, bid.k_sign)


def check_branch(
    spec: DesignSpec,
    bid: BranchId,
    tol: float = 1e-8,
    n: int = 1001,
    numerics: Numerics = DEFAULT_NUMERICS,
) -> list[Check]:
    """Energy identity, mirror symmetry, force round trip and domain safety."""
    table = sample_branch(spec, bid, n, numerics)
    x, y = table[:, 0], table[:, 1]
    checks = []

    energy = float(np.max(np.abs(energy_residual(spec, x, y)))) / _energy_scale(spec)
    checks.append(Check("energy_identity", energy, energy <= tol, tol))

    m_spec, m_bid = _mirror(spec, bid)
    dom, _ = compute_domain(spec, bid, numerics)
    m_dom, _ = compute_domain(m_spec, m_bid, numerics)
    m_y = m_bid.sign.value * np.sqrt(np.maximum(m_spec.u(x), 0.0))
    mirror = float(np.max(np.abs(y + m_y))) / spec.rod_length
    same_domain = dom == m_dom
    checks.append(Check("mirror_symmetry", mirror, same_domain and mirror <= tol, tol))

    p = np.asarray(eval_force(spec.force, x), dtype=float)
    rebuilt = _roundtrip(spec, y, x)
    roundtrip = float(np.max(np.abs(rebuilt - p))) / max(1.0, float(np.max(np.abs(p))))
    checks.append(Check("roundtrip_force", roundtrip, roundtrip <= tol, tol))

    reach = float(np.max(np.abs(y))) / spec.rod_length
    checks.append(Check("domain_safety", reach, reach < 1.0))
    return checks


def check_table(spec: DesignSpec, bid: BranchId, table: np.ndarray, tol: float = 1e-8) -> list[Check]:
    """Re-verify an emitted X,Y,U,Fr table against its design."""
    x, y, u, fr = table[:, 0], table[:, 1], table[:, 2], table[:, 3]
    checks = []

    energy = float(np.max(np.abs(energy_residual(spec, x, y)))) / _energy_scale(spec)
    checks.append(Check("energy_identity", energy, energy <= tol, tol))

    consistency = float(np.max(np.abs(y * y - u))) / spec.rod_length**2
    checks.append(Check("u_consistency", consistency, consistency <= tol, tol))

    p = np.asarray(eval_force(spec.force, x), dtype=float)
    force = float(np.max(np.abs(fr + p))) / max(1.0, float(np.max(np.abs(p))))
    checks.append(Check("restoring_force", force, force <= tol, tol))

    wrong_side = float(np.sum(bid.sign.value * y < 0))
    checks.append(Check("branch_sign", wrong_side, wrong_side == 0))

    reach = float(np.max(np.abs(y))) / spec.rod_length
    checks.append(Check("domain_safety", reach, reach < 1.0))

    monotone = bool(np.all(np.diff(x) > 0))
    checks.append(Check("monotone_x", 0.0 if monotone else 1.0, monotone))
    return checks
