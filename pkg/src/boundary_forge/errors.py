"""Exception hierarchy shared by the library and the CLI."""


class BoundaryForgeError(Exception):
    """Base class for every error raised by boundary_forge."""


class DomainError(BoundaryForgeError, ValueError):
    """A displacement lies outside the region where the model is defined."""


class RangeError(BoundaryForgeError, ValueError):
    """A tabulated force was evaluated outside its sample range."""


class SpecError(BoundaryForgeError, ValueError):
    """A design specification violates its invariants (K = 0, |delta| >= L, ...)."""


class SpecMismatch(BoundaryForgeError, ValueError):
    """A branch id is inconsistent with the design it is evaluated against."""


class SearchError(BoundaryForgeError, RuntimeError):
    """The outward domain scan failed to bracket a boundary."""


class DegenerateBranch(BoundaryForgeError, ValueError):
    """The branch domain is a single point; there is no curve to sample or simulate."""


class ConfigError(BoundaryForgeError, ValueError):
    """Invalid simulation settings."""
