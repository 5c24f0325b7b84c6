"""Dark-state tripod EIT medium: susceptibility, group velocity, propagation."""

__version__ = "0.1.0"

from .bloch import BlochState, chi_from_state, evolve_to_steady, steady_state_linear
from .dispersion import (
    ControlAngles,
    DispersionSample,
    consistency_check,
    dispersion_sample,
    group_velocity_control,
    negative_velocity_threshold,
    tan2phi_from_config,
)
from .figures import oracle_sweep, propagate_run
from .errors import (
    ConfigError,
    ConvergenceError,
    DarkTripodError,
    PhysicsDomainError,
    PoleError,
)
from .model import (
    DarkStatePrep,
    SystemConfig,
    f_theta,
    g_theta,
    initial_density,
    mixing_angle_from_rabi,
)
from .propagation import (
    MediumSlab,
    PulseEnvelope,
    gain_factor,
    gaussian_pulse,
    group_delay_centroid,
    propagate_characteristics,
    propagate_transfer,
)
from .susceptibility import (
    ChiSample,
    chi_complex,
    chi_complex_array,
    chi_im,
    chi_re,
    chi_scan,
    find_transparency_points,
    local_field_epsilon,
    steady_coherences,
)

__all__ = [
    "BlochState",
    "ChiSample",
    "ConfigError",
    "ControlAngles",
    "ConvergenceError",
    "DarkStatePrep",
    "DarkTripodError",
    "DispersionSample",
    "MediumSlab",
    "PhysicsDomainError",
    "PoleError",
    "PulseEnvelope",
    "SystemConfig",
    "chi_complex",
    "chi_complex_array",
    "chi_from_state",
    "chi_im",
    "chi_re",
    "chi_scan",
    "consistency_check",
    "dispersion_sample",
    "evolve_to_steady",
    "f_theta",
    "find_transparency_points",
    "g_theta",
    "gain_factor",
    "gaussian_pulse",
    "group_delay_centroid",
    "group_velocity_control",
    "initial_density",
    "local_field_epsilon",
    "mixing_angle_from_rabi",
    "negative_velocity_threshold",
    "oracle_sweep",
    "propagate_characteristics",
    "propagate_run",
    "propagate_transfer",
    "steady_coherences",
    "steady_state_linear",
    "tan2phi_from_config",
]
