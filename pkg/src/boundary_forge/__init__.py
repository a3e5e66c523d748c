"""Inverse design of roller tracks for nonlinear stiffness systems."""
from .errors import (
    BoundaryForgeError,
    ConfigError,
    DegenerateBranch,
    DomainError,
    RangeError,
    SearchError,
    SpecError,
    SpecMismatch,
)
from .force import Duffing, Polynomial, PotentialClass, Tabulated, classify_potential, eval_force, potential
from .glsm import GlsmParams, StiffnessSign, classify_stiffness, effective_stiffness, glsm_force, glsm_stiffness
from .synthesis import (
    BranchId,
    BranchStatus,
    ConfigurationCensus,
    DeformationCase,
    DesignSpec,
    Domain,
    Numerics,
    Sign,
    TrajectoryBranch,
    branch_value,
    compute_domain,
    enumerate_configurations,
    roundtrip_force,
    sample_branch,
)
from .dynamics import SimConfig, SimResult, Termination, restoring_force, simulate, total_energy

__version__ = "0.1.0"
