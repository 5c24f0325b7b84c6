"""Brute-force steady-state oracle for the weak-probe coherence equations.

With populations and the ground-state Raman coherence frozen at their
prepared values, the four slowly-varying coherences split into two decoupled
2x2 linear blocks, (rho41, rho31) driven by f(theta) and (rho42, rho32)
driven by g(theta):

    d/dt rho4j = -(i*Deltaj + gamma4j) rho4j + (i/2) Omega_P w + (i/2) Omega_C rho3j
    d/dt rho3j = -i (Deltaj - Delta_C) rho3j + (i/2) Omega_C rho4j

Each block is solved twice: by direct linear solve and by explicit RK4 time
integration from zero to convergence.  The two routes, plus the factored
closed form, validate one another.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ConvergenceError, PoleError
from .model import DarkStatePrep, SystemConfig, f_theta, g_theta, initial_density

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn


# Determinant modulus below which a block is treated as singular.
SINGULAR_TOL = 1e-12

# Convergence is declared when the max coherence change per unit gamma-time
# stays below both the absolute rate tolerance and the relative one (scaled
# by the current state norm) for several consecutive steps.  The relative
# clause keeps the converged state within 1e-6 of the linear solve even when
# the coherences themselves are small.
RATE_TOL = 1e-10
REL_RATE_TOL = 1e-9
_CONSECUTIVE = 5


@dataclass(frozen=True)
class BlochState:
    """The four slowly-varying coherences plus the frozen preparation."""

    rho41: complex
    rho31: complex
    rho42: complex
    rho32: complex
    prep: DarkStatePrep

    def as_vector(self) -> np.ndarray:
        return np.array([self.rho41, self.rho31, self.rho42, self.rho32], dtype=complex)


def _block(cfg: SystemConfig, delta: float, gamma_od: float) -> np.ndarray:
    return np.array(
        [
            [-(1j * delta + gamma_od), 0.5j * cfg.Omega_C],
            [0.5j * cfg.Omega_C, -1j * (delta - cfg.Delta_C)],
        ],
        dtype=complex,
    )


def _sources(cfg: SystemConfig, omega_p: float) -> tuple[complex, complex]:
    s1 = 0.5j * omega_p * f_theta(cfg.theta)
    s2 = 0.5j * omega_p * g_theta(cfg.theta)
    return s1, s2


def steady_state_linear(cfg: SystemConfig, omega_p: float, delta1: float) -> BlochState:
    """Exact steady state of the frozen-population coherence equations."""
    delta2 = delta1 - cfg.omega21
    a1 = _block(cfg, delta1, cfg.gamma41)
    a2 = _block(cfg, delta2, cfg.gamma42)
    if abs(np.linalg.det(a1)) < SINGULAR_TOL or abs(np.linalg.det(a2)) < SINGULAR_TOL:
        raise PoleError("pole: singular coherence block")
    s1, s2 = _sources(cfg, omega_p)
    x1 = np.linalg.solve(a1, np.array([-s1, 0.0], dtype=complex))
    x2 = np.linalg.solve(a2, np.array([-s2, 0.0], dtype=complex))
    return BlochState(
        rho41=complex(x1[0]),
        rho31=complex(x1[1]),
        rho42=complex(x2[0]),
        rho32=complex(x2[1]),
        prep=initial_density(cfg.theta),
    )


@njit(cache=True)
def _rk4_block(a11, a12, a21, a22, s1, s2, dt, n_max, rate_tol, rel_rate_tol):
    """Integrate x' = A x + s from zero by classical RK4 until the change
    rate criterion holds.  Returns (x1, x2, status) with status 0 = hit the
    horizon, 1 = converged, 2 = diverged (NaN)."""
    x1 = 0.0 + 0.0j
    x2 = 0.0 + 0.0j
    consec = 0
    for _ in range(n_max):
        k11 = a11 * x1 + a12 * x2 + s1
        k12 = a21 * x1 + a22 * x2 + s2

        y1 = x1 + 0.5 * dt * k11
        y2 = x2 + 0.5 * dt * k12
        k21 = a11 * y1 + a12 * y2 + s1
        k22 = a21 * y1 + a22 * y2 + s2

        y1 = x1 + 0.5 * dt * k21
        y2 = x2 + 0.5 * dt * k22
        k31 = a11 * y1 + a12 * y2 + s1
        k32 = a21 * y1 + a22 * y2 + s2

        y1 = x1 + dt * k31
        y2 = x2 + dt * k32
        k41 = a11 * y1 + a12 * y2 + s1
        k42 = a21 * y1 + a22 * y2 + s2

        dx1 = (dt / 6.0) * (k11 + 2.0 * k21 + 2.0 * k31 + k41)
        dx2 = (dt / 6.0) * (k12 + 2.0 * k22 + 2.0 * k32 + k42)
        x1 = x1 + dx1
        x2 = x2 + dx2

        if not (np.isfinite(x1.real) and np.isfinite(x1.imag)
                and np.isfinite(x2.real) and np.isfinite(x2.imag)):
            return x1, x2, 2

        change = max(abs(dx1), abs(dx2)) / dt
        norm = max(abs(x1), abs(x2))
        if change <= rate_tol and change <= rel_rate_tol * norm + 1e-300:
            consec += 1
            if consec >= _CONSECUTIVE:
                return x1, x2, 1
        else:
            consec = 0
    return x1, x2, 0


def default_dt(cfg: SystemConfig, delta1: float) -> float:
    """Largest step satisfying the explicit-integrator stability rule."""
    delta2 = delta1 - cfg.omega21
    scale = max(cfg.gamma41, cfg.gamma42, cfg.Omega_C, abs(delta1), abs(delta2), cfg.gamma)
    return 0.01 / scale


def evolve_to_steady(cfg: SystemConfig, omega_p: float, delta1: float,
                     dt: float | None = None, t_max: float = 500.0) -> tuple[BlochState, bool]:
    """Time-integrate the coherence equations from zero until steady.

    Returns the final state and a convergence flag; a non-converged state is
    still returned.  NaN blow-up raises ConvergenceError.
    """
    if dt is None:
        dt = default_dt(cfg, delta1)
    if dt <= 0 or t_max <= 0:
        raise ConfigError("dt and t_max must be positive")
    n_max = max(int(t_max / dt), 1)
    delta2 = delta1 - cfg.omega21
    s1, s2 = _sources(cfg, omega_p)

    converged = True
    coherences = []
    for delta, gamma_od, s in ((delta1, cfg.gamma41, s1), (delta2, cfg.gamma42, s2)):
        a = _block(cfg, delta, gamma_od)
        x1, x2, status = _rk4_block(
            a[0, 0], a[0, 1], a[1, 0], a[1, 1], s, 0.0 + 0.0j,
            dt, n_max, RATE_TOL, REL_RATE_TOL,
        )
        if status == 2:
            raise ConvergenceError("integration diverged")
        converged = converged and status == 1
        coherences.append((complex(x1), complex(x2)))

    state = BlochState(
        rho41=coherences[0][0],
        rho31=coherences[0][1],
        rho42=coherences[1][0],
        rho32=coherences[1][1],
        prep=initial_density(cfg.theta),
    )
    return state, converged


def chi_from_state(state: BlochState, omega_p: float, K: float) -> complex:
    """Susceptibility implied by a coherence state: chi = 2K(rho41 + rho42)/Omega_P."""
    if omega_p == 0:
        raise ConfigError("omega_p must be nonzero to normalize chi")
    return 2.0 * K * (state.rho41 + state.rho42) / omega_p


def pole_distance(cfg: SystemConfig, delta1: float) -> float:
    """Smaller of the two dressed-denominator moduli; used to exclude pole
    neighborhoods from randomized sweeps."""
    delta2 = delta1 - cfg.omega21
    den1 = (1j * delta1 + cfg.gamma41) * (delta1 - cfg.Delta_C) - 0.25j * cfg.Omega_C ** 2
    den2 = (1j * delta2 + cfg.gamma42) * (delta2 - cfg.Delta_C) - 0.25j * cfg.Omega_C ** 2
    return min(abs(den1), abs(den2))
