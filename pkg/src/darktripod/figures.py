"""CSV table builders for the reproduction scans and the oracle sweep.

Everything here is deterministic: identical inputs (including sweep seeds)
produce byte-identical CSV text.  Numbers are emitted with full round-trip
precision; pole gaps are empty fields; annotations are '#' comment lines.
"""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from .bloch import default_dt, evolve_to_steady, pole_distance, steady_state_linear
from .dispersion import (
    ControlAngles,
    group_velocity_control,
    negative_velocity_threshold,
    tan2phi_from_config,
)
from .errors import ConfigError, PoleError
from .model import HALF_PI, SystemConfig, f_theta, g_theta
from .propagation import (
    MediumSlab,
    gain_factor,
    gaussian_pulse,
    group_delay_centroid,
    propagate_transfer,
)
from .susceptibility import chi_scan, local_field_epsilon, steady_coherences


def _fmt(x: float) -> str:
    return repr(float(x))


def fig2_table(theta_grid: np.ndarray) -> str:
    """Weight functions f and g over a mixing-angle grid, minima annotated."""
    grid = np.asarray(theta_grid, dtype=float)
    if grid.size == 0:
        raise ConfigError("empty theta grid")
    if grid.min() < 0 or grid.max() > HALF_PI:
        raise ConfigError("theta grid must lie within [0, pi/2]")
    f = np.array([f_theta(t) for t in grid])
    g = np.array([g_theta(t) for t in grid])
    i_f, i_g = int(np.argmin(f)), int(np.argmin(g))
    lines = [
        f"# min_f: theta={_fmt(grid[i_f])} value={_fmt(f[i_f])}",
        f"# min_g: theta={_fmt(grid[i_g])} value={_fmt(g[i_g])}",
        "theta_rad,f_theta,g_theta",
    ]
    lines += [f"{_fmt(t)},{_fmt(fv)},{_fmt(gv)}" for t, fv, gv in zip(grid, f, g)]
    return "\n".join(lines) + "\n"


def scan_table(cfg: SystemConfig, delta1_grid: np.ndarray) -> str:
    """Susceptibility scan CSV: delta1_over_gamma,re_chi,im_chi (gaps empty)."""
    lines = ["delta1_over_gamma,re_chi,im_chi"]
    for sample in chi_scan(cfg, delta1_grid):
        if sample.chi is None:
            lines.append(f"{_fmt(sample.delta1)},,")
        else:
            lines.append(f"{_fmt(sample.delta1)},{_fmt(sample.chi.real)},{_fmt(sample.chi.imag)}")
    return "\n".join(lines) + "\n"


def fig3_tables(cfg: SystemConfig, delta1_grid: np.ndarray,
                thetas: list[float]) -> list[tuple[float, str]]:
    """One susceptibility scan per mixing angle (dispersion-figure data)."""
    return [(t, scan_table(cfg.with_theta(t), delta1_grid)) for t in thetas]


def fig4_table(theta_grid: np.ndarray, tan2phi_list: list[float]) -> str:
    """Group velocity over (theta, tan2phi), long format; threshold rows flagged."""
    grid = np.asarray(theta_grid, dtype=float)
    if grid.size == 0:
        raise ConfigError("empty theta grid")
    if grid.min() < 0 or grid.max() > HALF_PI:
        raise ConfigError("theta grid must lie within [0, pi/2]")
    lines = [
        f"# negative_velocity_threshold tan2phi={_fmt(negative_velocity_threshold())}",
        "theta_rad,tan2phi,vg_over_c",
    ]
    for tan2phi in tan2phi_list:
        for t in grid:
            try:
                vg = group_velocity_control(ControlAngles(theta=float(t), tan2phi=tan2phi))
            except PoleError:
                lines.append(f"{_fmt(t)},{_fmt(tan2phi)},")
                continue
            lines.append(f"{_fmt(t)},{_fmt(tan2phi)},{_fmt(vg)}")
    return "\n".join(lines) + "\n"


def fig5_tables(cfg: SystemConfig, delta1_grid: np.ndarray,
                thetas: list[float]) -> list[tuple[float, str]]:
    """Dense-medium scans: bare chi next to the local-field corrected epsilon - 1."""
    out = []
    for t in thetas:
        lines = ["delta1_over_gamma,re_chi,im_chi,re_eps_minus_1,im_eps_minus_1"]
        for sample in chi_scan(cfg.with_theta(t), delta1_grid):
            if sample.chi is None:
                lines.append(f"{_fmt(sample.delta1)},,,,")
                continue
            try:
                eps = local_field_epsilon(sample.chi)
            except PoleError:
                lines.append(
                    f"{_fmt(sample.delta1)},{_fmt(sample.chi.real)},{_fmt(sample.chi.imag)},,"
                )
                continue
            lines.append(
                f"{_fmt(sample.delta1)},{_fmt(sample.chi.real)},{_fmt(sample.chi.imag)},"
                f"{_fmt(eps.real)},{_fmt(eps.imag)}"
            )
        out.append((t, "\n".join(lines) + "\n"))
    return out


def oracle_sweep(cfg: SystemConfig, n_samples: int = 1000, seed: int = 12345,
                 omega_p: float = 1.0, omega_c_range: tuple[float, float] = (0.1, 10.0),
                 delta1_range: tuple[float, float] = (-10.0, 10.0),
                 t_max: float = 2e4, pole_exclusion: float = 1e-3,
                 dt_factor: float = 0.2) -> tuple[str, dict]:
    """Randomized three-way steady-state comparison.

    Samples (Omega_C log-uniform, Delta1 uniform, theta uniform), excludes
    pole neighborhoods, and reports per-sample relative residuals between
    the factored closed form, the direct linear solve, and the converged
    time integration.  Returns (csv_text, summary).
    """
    if n_samples < 1:
        raise ConfigError("n_samples must be at least 1")
    rng = np.random.default_rng(seed)
    log_lo, log_hi = math.log(omega_c_range[0]), math.log(omega_c_range[1])

    lines = [
        f"# seed={seed} n_samples={n_samples} omega_p={_fmt(omega_p)}",
        "omega_c,delta1,theta,resid_closed_vs_linear,resid_linear_vs_ode,converged",
    ]
    max_closed = 0.0
    max_ode = 0.0
    n_unconverged = 0
    for _ in range(n_samples):
        while True:
            omega_c = math.exp(rng.uniform(log_lo, log_hi))
            delta1 = rng.uniform(*delta1_range)
            theta = rng.uniform(0.0, HALF_PI)
            sample_cfg = replace(cfg, Omega_C=omega_c, theta=theta)
            if pole_distance(sample_cfg, delta1) >= pole_exclusion:
                break

        linear = steady_state_linear(sample_cfg, omega_p, delta1)
        closed = steady_coherences(sample_cfg, omega_p, delta1)
        # The RK4 fixed point of a linear system is the exact steady state at
        # any stable step, so the sweep may stride 20x wider than the
        # conservative default without losing accuracy.
        dt = dt_factor * default_dt(sample_cfg, delta1) / 0.01
        ode, converged = evolve_to_steady(sample_cfg, omega_p, delta1, dt=dt, t_max=t_max)

        lin_vec = linear.as_vector()
        scale = max(float(np.max(np.abs(lin_vec))), 1e-300)
        resid_closed = max(abs(closed[0] - linear.rho41), abs(closed[1] - linear.rho42)) / scale
        resid_ode = float(np.max(np.abs(ode.as_vector() - lin_vec))) / scale

        max_closed = max(max_closed, resid_closed)
        if converged:
            max_ode = max(max_ode, resid_ode)
        else:
            n_unconverged += 1
        lines.append(
            f"{_fmt(omega_c)},{_fmt(delta1)},{_fmt(theta)},"
            f"{_fmt(resid_closed)},{_fmt(resid_ode)},{int(converged)}"
        )

    summary = {
        "seed": seed,
        "n_samples": n_samples,
        "n_unconverged": n_unconverged,
        "max_resid_closed_vs_linear": max_closed,
        "max_resid_linear_vs_ode": max_ode,
        "pass": bool(max_closed < 1e-12 and max_ode < 1e-6 and n_unconverged == 0),
    }
    lines.insert(1, f"# max_closed_vs_linear={_fmt(max_closed)} max_linear_vs_ode={_fmt(max_ode)}")
    return "\n".join(lines) + "\n", summary


def propagate_run(cfg: SystemConfig, sigma_t: float = 200.0, n_samples: int = 2 ** 14,
                  span_sigmas: float = 8.0, carrier_delta1: float = 0.0,
                  length: float = 1.0, local_field: bool = False) -> tuple[str, dict]:
    """Propagate the default Gaussian probe through a slab; CSV + summary.

    The summary compares the measured centroid delay against the control-law
    prediction L(1/V_g - 1/c) with tan^2(phi) derived from the same medium.
    """
    pulse = gaussian_pulse(sigma_t=sigma_t, n_samples=n_samples,
                           span_sigmas=span_sigmas, carrier_delta1=carrier_delta1)
    slab = MediumSlab(length=length, cfg=cfg, local_field=local_field)
    out = propagate_transfer(pulse, slab)
    vacuum = propagate_transfer(pulse, MediumSlab(length=0.0, cfg=cfg,
                                                  local_field=local_field))

    delay = group_delay_centroid(vacuum, out)
    gain = gain_factor(pulse, out)
    vg = group_velocity_control(
        ControlAngles(theta=cfg.theta, tan2phi=tan2phi_from_config(cfg)))
    predicted = length * (1.0 / vg - 1.0)
    denom = abs(predicted) if abs(predicted) > 1e-9 else 1.0
    summary = {
        "delay": delay,
        "gain": gain,
        "vg_over_c": vg,
        "predicted_delay": predicted,
        "relative_error": abs(delay - predicted) / denom,
    }

    lines = [
        f"# delay={_fmt(delay)}",
        f"# gain={_fmt(gain)}",
        f"# predicted_delay={_fmt(predicted)}",
        "t_over_invgamma,re_in,im_in,re_out,im_out,re_vacuum,im_vacuum",
    ]
    for i, t in enumerate(pulse.t_grid):
        lines.append(
            f"{_fmt(t)},{_fmt(pulse.amplitude[i].real)},{_fmt(pulse.amplitude[i].imag)},"
            f"{_fmt(out.amplitude[i].real)},{_fmt(out.amplitude[i].imag)},"
            f"{_fmt(vacuum.amplitude[i].real)},{_fmt(vacuum.amplitude[i].imag)}"
        )
    return "\n".join(lines) + "\n", summary
