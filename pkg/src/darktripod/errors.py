"""Exception hierarchy shared by all darktripod modules.

The CLI maps these onto exit codes: configuration problems exit 2,
physics-domain failures (poles, branch cuts, undefined index) exit 3,
and non-convergence exits 4.
"""


class DarkTripodError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(DarkTripodError, ValueError):
    """Invalid physical configuration or malformed input."""


class PoleError(DarkTripodError):
    """A denominator hit a dressed-state resonance or Lorentz-Lorenz pole."""


class PhysicsDomainError(DarkTripodError):
    """Operation called outside its physical domain of validity."""


class ConvergenceError(DarkTripodError):
    """Iterative computation failed to converge or diverged."""
