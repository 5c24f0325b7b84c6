"""Physical configuration of the tripod medium and dark-state preparation.

All frequencies are expressed in units of the coherence decay rate ``gamma``,
which is stored but numerically 1.0 so detuning axes read directly in
decay-rate units.  The mixing angle ``theta`` fixes the coherent ground-state
superposition cos(theta)|1> - sin(theta)|2> prepared before the probe
arrives; the weight functions ``f_theta`` / ``g_theta`` built from it carry
the whole theta-dependence of the linear response.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .errors import ConfigError

HALF_PI = math.pi / 2.0

# Serialization order for the flat key=value config format.
CONFIG_KEYS = (
    "gamma",
    "gamma41",
    "gamma42",
    "K",
    "omega21",
    "Omega_C",
    "Delta_C",
    "theta",
    "omega41",
)


def _check_theta(theta: float) -> float:
    if not (0.0 <= theta <= HALF_PI):
        raise ConfigError(f"theta must lie in [0, pi/2], got {theta!r}")
    return theta


@dataclass(frozen=True)
class SystemConfig:
    """All physical parameters of the tripod medium, in units of gamma.

    Defaults reproduce the cold-gas parameter set used throughout the
    dispersion scans: Omega_C = 2 gamma, omega21 = 5 gamma, K = gamma.
    ``omega41`` is the probe transition frequency; the artificial desk-scale
    default (100 gamma) keeps the group-velocity cross-check well
    conditioned while leaving the identities it enters scale-free.
    """

    gamma: float = 1.0
    gamma41: float = 1.0
    gamma42: float = 1.0
    K: float = 1.0
    omega21: float = 5.0
    Omega_C: float = 2.0
    Delta_C: float = 0.0
    theta: float = 0.0
    omega41: float = 100.0

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise ConfigError(f"gamma must be positive, got {self.gamma!r}")
        if self.gamma41 <= 0 or self.gamma42 <= 0:
            raise ConfigError("off-diagonal decay rates gamma41, gamma42 must be positive")
        if self.Omega_C < 0:
            raise ConfigError(f"Omega_C must be non-negative, got {self.Omega_C!r}")
        if self.K < 0:
            raise ConfigError(f"K must be non-negative, got {self.K!r}")
        if self.omega21 <= 0:
            raise ConfigError("omega21 must be positive (two distinct probe resonances)")
        _check_theta(self.theta)

    def with_theta(self, theta: float) -> "SystemConfig":
        return replace(self, theta=theta)

    def to_dict(self) -> dict[str, float]:
        return {k: float(getattr(self, k)) for k in CONFIG_KEYS}

    @classmethod
    def from_dict(cls, data: dict[str, float]) -> "SystemConfig":
        unknown = set(data) - set(CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})

    def dumps(self) -> str:
        lines = ["# darktripod system configuration (frequencies in units of gamma)"]
        lines += [f"{k} = {getattr(self, k)!r}" for k in CONFIG_KEYS]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "SystemConfig":
        data: dict[str, float] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in CONFIG_KEYS:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            if key in data:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            try:
                data[key] = float(value.strip())
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: bad value for {key!r}: {value.strip()!r}") from exc
        return cls.from_dict(data)

    def to_file(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def from_file(cls, path: str | Path) -> "SystemConfig":
        return cls.loads(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class DarkStatePrep:
    """Frozen initial populations and Raman coherence of the dark-state manifold."""

    theta: float
    rho11_0: float
    rho22_0: float
    rho12_0: float


def mixing_angle_from_rabi(omega1: float, omega2: float) -> float:
    """Mixing angle of the dark superposition from the preparation Rabi frequencies.

    cos(theta) = omega1 / sqrt(omega1^2 + omega2^2).  Both inputs must be
    non-negative and not both zero.
    """
    if omega1 < 0 or omega2 < 0:
        raise ConfigError("preparation Rabi frequencies must be non-negative")
    if omega1 == 0 and omega2 == 0:
        raise ConfigError("dark state undefined: both preparation fields are zero")
    return math.atan2(omega2, omega1)


def f_theta(theta: float) -> float:
    """Weight of the |1>-resonance response: cos^2(theta) - cos(theta)sin(theta).

    Positive for theta < pi/4 (net absorption near the first resonance),
    zero at pi/4 and pi/2, global minimum (1-sqrt(2))/2 at 3*pi/8.
    """
    _check_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    return c * c - c * s


def g_theta(theta: float) -> float:
    """Weight of the |2>-resonance response: sin^2(theta) - cos(theta)sin(theta).

    Mirror of ``f_theta``: g(theta) = f(pi/2 - theta).
    """
    _check_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    return s * s - c * s


def initial_density(theta: float) -> DarkStatePrep:
    """Populations and Raman coherence of the coherently prepared dark state."""
    _check_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    return DarkStatePrep(theta=theta, rho11_0=c * c, rho22_0=s * s, rho12_0=-c * s)
