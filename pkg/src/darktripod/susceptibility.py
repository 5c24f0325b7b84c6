"""Closed-form steady-state coherences and probe susceptibility.

The probe couples the prepared dark superposition to the upper level, so the
linear response splits into two dressed resonances at probe detuning
Delta1 = 0 and Delta1 = omega21 (where Delta2 = Delta1 - omega21 vanishes),
weighted by f(theta) and g(theta) respectively.  The general complex form
keeps independent gamma41, gamma42 and a control detuning; the explicit
real/imaginary split is a separate restricted code path (symmetric decay,
resonant control) kept so each route can test the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, PhysicsDomainError, PoleError
from .model import SystemConfig, f_theta, g_theta

# Denominator modulus (gamma^2 units) below which a dressed-state pole is declared.
POLE_TOL = 1e-12


@dataclass(frozen=True)
class ChiSample:
    """Complex susceptibility at one probe detuning.

    ``chi`` is None when the grid point sits on a dressed-state pole; scans
    record the gap explicitly instead of emitting a huge finite number.
    ``source`` tags the computation route (analytic, oracle-linear, oracle-ode).
    """

    delta1: float
    chi: complex | None
    source: str = "analytic"


def _denominator(delta: np.ndarray | float, delta_c: float, gamma_od: float,
                 omega_c: float):
    return (1j * delta + gamma_od) * (delta - delta_c) - 0.25j * omega_c ** 2


def steady_coherences(cfg: SystemConfig, omega_p: float, delta1: float) -> tuple[complex, complex]:
    """Steady-state optical coherences (rho41, rho42) for a weak probe.

    Both are linear in ``omega_p``.  Raises PoleError when either dressed
    denominator vanishes (possible only for gamma -> 0 at the dressed
    resonance Delta*(Delta - Delta_C) = Omega_C^2/4).
    """
    d1 = delta1
    d2 = delta1 - cfg.omega21
    den1 = _denominator(d1, cfg.Delta_C, cfg.gamma41, cfg.Omega_C)
    den2 = _denominator(d2, cfg.Delta_C, cfg.gamma42, cfg.Omega_C)
    if abs(den1) < POLE_TOL or abs(den2) < POLE_TOL:
        raise PoleError("pole: dressed-state resonance")
    rho41 = 0.5j * omega_p * f_theta(cfg.theta) * (d1 - cfg.Delta_C) / den1
    rho42 = 0.5j * omega_p * g_theta(cfg.theta) * (d2 - cfg.Delta_C) / den2
    return rho41, rho42


def chi_complex(cfg: SystemConfig, delta1: float) -> complex:
    """Complex probe susceptibility 2K(rho41 + rho42)/Omega_P at one detuning."""
    rho41, rho42 = steady_coherences(cfg, 1.0, delta1)
    return 2.0 * cfg.K * (rho41 + rho42)


def chi_complex_array(cfg: SystemConfig, delta1) -> np.ndarray:
    """Vectorized ``chi_complex``; pole points come back as NaN."""
    d1 = np.asarray(delta1, dtype=float)
    d2 = d1 - cfg.omega21
    den1 = _denominator(d1, cfg.Delta_C, cfg.gamma41, cfg.Omega_C)
    den2 = _denominator(d2, cfg.Delta_C, cfg.gamma42, cfg.Omega_C)
    f = f_theta(cfg.theta)
    g = g_theta(cfg.theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        chi = 1j * cfg.K * (f * (d1 - cfg.Delta_C) / den1 + g * (d2 - cfg.Delta_C) / den2)
    bad = (np.abs(den1) < POLE_TOL) | (np.abs(den2) < POLE_TOL)
    if np.any(bad):
        chi = np.where(bad, np.nan + 0j, chi)
    return chi


def _require_symmetric(cfg: SystemConfig) -> float:
    if cfg.Delta_C != 0.0 or cfg.gamma41 != cfg.gamma42:
        raise PhysicsDomainError("closed form requires symmetric decay, resonant control")
    return cfg.gamma41


def chi_re(cfg: SystemConfig, delta1: float) -> float:
    """Real part of chi from the explicit restricted closed form.

    Valid only for Delta_C = 0 and gamma41 = gamma42; the general complex
    route must agree with this to machine precision under those assumptions.
    """
    gamma = _require_symmetric(cfg)
    q = 0.25 * cfg.Omega_C ** 2
    d1 = delta1
    d2 = delta1 - cfg.omega21
    t1 = d1 * (d1 * d1 - q) / (gamma * gamma * d1 * d1 + (d1 * d1 - q) ** 2)
    t2 = d2 * (d2 * d2 - q) / (gamma * gamma * d2 * d2 + (d2 * d2 - q) ** 2)
    return cfg.K * (f_theta(cfg.theta) * t1 + g_theta(cfg.theta) * t2)


def chi_im(cfg: SystemConfig, delta1: float) -> float:
    """Imaginary part of chi (absorption > 0, gain < 0), restricted closed form."""
    gamma = _require_symmetric(cfg)
    q = 0.25 * cfg.Omega_C ** 2
    d1 = delta1
    d2 = delta1 - cfg.omega21
    t1 = gamma * d1 * d1 / (gamma * gamma * d1 * d1 + (d1 * d1 - q) ** 2)
    t2 = gamma * d2 * d2 / (gamma * gamma * d2 * d2 + (d2 * d2 - q) ** 2)
    return cfg.K * (f_theta(cfg.theta) * t1 + g_theta(cfg.theta) * t2)


def local_field_epsilon(chi_bare: complex) -> complex:
    """Lorentz-Lorenz corrected dielectric response, returned as epsilon - 1.

    Identifies N*alpha with the bare linear susceptibility, so
    epsilon - 1 = chi / (1 - chi/3).
    """
    den = 1.0 - chi_bare / 3.0
    if abs(den) < POLE_TOL:
        raise PoleError("Lorentz-Lorenz pole")
    return chi_bare / den


def chi_scan(cfg: SystemConfig, delta1_grid: Sequence[float]) -> list[ChiSample]:
    """Evaluate chi on a strictly increasing detuning grid.

    Pole points are recorded as explicit gaps (chi=None) rather than
    aborting the scan.
    """
    grid = np.asarray(delta1_grid, dtype=float)
    if grid.size == 0:
        raise ConfigError("empty detuning grid")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ConfigError("detuning grid must be strictly increasing")
    chi = chi_complex_array(cfg, grid)
    samples = []
    for d, c in zip(grid.tolist(), chi.tolist()):
        if c != c:  # NaN marks a pole gap
            samples.append(ChiSample(delta1=d, chi=None))
        else:
            samples.append(ChiSample(delta1=d, chi=c))
    return samples


def find_transparency_points(cfg: SystemConfig, bracket: tuple[float, float],
                             n_scan: int = 4001, im_tol: float = 1e-10) -> list[tuple[float, float]]:
    """Locate detunings where Im chi crosses zero with Re chi != 0.

    Scans the bracket, then bisects each sign change until |Im chi| < im_tol.
    Returns (delta1, chi_re) pairs so callers can classify high-index
    (chi_re > 0) versus negative-index (chi_re < 0) transparency points.
    An empty list (no sign change) is not an error.
    """
    lo, hi = bracket
    if not lo < hi:
        raise ConfigError("bracket must satisfy lo < hi")
    if abs(f_theta(cfg.theta)) < 1e-15 and abs(g_theta(cfg.theta)) < 1e-15:
        raise PhysicsDomainError("medium is transparent everywhere (theta = pi/4)")

    grid = np.linspace(lo, hi, n_scan)
    im = chi_complex_array(cfg, grid).imag
    roots: list[tuple[float, float]] = []
    for i in np.nonzero(np.sign(im[:-1]) * np.sign(im[1:]) < 0)[0]:
        a, b = float(grid[i]), float(grid[i + 1])
        fa = im[i]
        for _ in range(200):
            mid = 0.5 * (a + b)
            fm = chi_complex(cfg, mid).imag
            if abs(fm) < im_tol or (b - a) < 1e-15:
                break
            if fa * fm < 0:
                b = mid
            else:
                a, fa = mid, fm
        mid = 0.5 * (a + b)
        re = chi_complex(cfg, mid).real
        if re != 0.0:
            roots.append((mid, re))
    return roots
