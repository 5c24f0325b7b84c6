import math

import numpy as np
import pytest

from darktripod import (
    ConfigError,
    ControlAngles,
    PoleError,
    SystemConfig,
    consistency_check,
    dispersion_sample,
    group_velocity_control,
    negative_velocity_threshold,
    tan2phi_from_config,
)
from darktripod.model import f_theta

PI = math.pi


class TestControlLaw:
    def test_balanced_angle_vacuum(self):
        for tan2phi in (0.0, 1.0, 50.0):
            vg = group_velocity_control(ControlAngles(PI / 4, tan2phi))
            assert vg == pytest.approx(1.0, abs=1e-14)

    def test_slow_light(self):
        assert group_velocity_control(ControlAngles(0.0, 1.0)) == pytest.approx(0.5)

    def test_negative_regime(self):
        vg = group_velocity_control(ControlAngles(3 * PI / 8, 10.0))
        assert vg == pytest.approx(1.0 / (1.0 - 10.0 * (math.sqrt(2) - 1) / 2), rel=1e-12)
        assert vg == pytest.approx(-0.93368, abs=1e-4)

    def test_threshold_crossing(self):
        thr = negative_velocity_threshold()
        assert thr == pytest.approx(2 * (math.sqrt(2) + 1), rel=1e-15)
        assert thr == pytest.approx(4.8284, abs=1e-4)
        below = group_velocity_control(ControlAngles(3 * PI / 8, thr * 0.99))
        above = group_velocity_control(ControlAngles(3 * PI / 8, thr * 1.01))
        assert below > 1.0
        assert above < 0.0

    def test_exact_threshold_is_pole(self):
        with pytest.raises(PoleError, match="infinite group velocity"):
            group_velocity_control(ControlAngles(3 * PI / 8, negative_velocity_threshold()))

    def test_negative_tan2phi_rejected(self):
        with pytest.raises(ConfigError):
            ControlAngles(0.1, -1.0)

    def test_sign_law(self):
        # sign(1 - vg) = sign(f(theta)) away from the threshold
        for theta in np.linspace(0.0, PI / 2, 41):
            f = f_theta(float(theta))
            den = 1.0 + f * 3.0
            if abs(den) < 1e-6:
                continue
            vg = group_velocity_control(ControlAngles(float(theta), 3.0))
            assert np.sign(np.round(1.0 - vg, 12)) == np.sign(np.round(f, 12))

    def test_extremal_at_three_eighths(self):
        # denominator of the control law is minimized at theta = 3pi/8
        grid = np.linspace(0.0, PI / 2, 2001)
        dens = 1.0 + np.array([f_theta(float(t)) for t in grid]) * 10.0
        assert grid[int(np.argmin(dens))] == pytest.approx(3 * PI / 8, abs=1e-3)


class TestDispersionSample:
    def test_balanced_angle(self):
        cfg = SystemConfig(theta=PI / 4, omega41=100.0)
        s = dispersion_sample(cfg, 0.0)
        assert s.n == pytest.approx(1.0, abs=1e-14)
        assert s.dn_dnu == pytest.approx(0.0, abs=1e-14)
        assert s.vg_over_c == pytest.approx(1.0, abs=1e-12)

    def test_slow_light_group_index(self):
        cfg = SystemConfig(theta=0.0, K=1.0, Omega_C=2.0, omega41=100.0)
        s = dispersion_sample(cfg, 0.0)
        assert s.n == pytest.approx(1.0, abs=1e-12)
        # analytic slope of Re chi at line center is 4 K f / Omega_C^2 = 1
        assert s.n_group == pytest.approx(51.0, rel=1e-4)
        assert s.vg_over_c == pytest.approx(1.0 / 51.0, rel=1e-4)

    def test_far_detuned_approaches_vacuum(self):
        cfg = SystemConfig(theta=0.0, omega41=100.0)
        s = dispersion_sample(cfg, 100.0)
        assert s.n == pytest.approx(1.0, abs=1e-2)
        assert s.vg_over_c == pytest.approx(1.0, rel=1e-2)

    def test_fd_step_validation(self):
        cfg = SystemConfig()
        with pytest.raises(ConfigError):
            dispersion_sample(cfg, 0.0, h=0.1)
        with pytest.raises(ConfigError):
            dispersion_sample(cfg, 0.0, h=0.0)

    def test_fd_second_order_convergence(self):
        # halving h changes the slope estimate by O(h^2)
        cfg = SystemConfig(theta=0.2, omega41=100.0)
        delta1 = 0.4
        slopes = {h: dispersion_sample(cfg, delta1, h=h).dn_dnu
                  for h in (8e-3, 4e-3, 2e-3)}
        err_coarse = abs(slopes[8e-3] - slopes[2e-3])
        err_fine = abs(slopes[4e-3] - slopes[2e-3])
        assert err_fine < err_coarse / 3.0


class TestConsistency:
    def test_tan2phi_derivation(self):
        cfg = SystemConfig(K=1.0, Omega_C=2.0, omega41=100.0)
        assert tan2phi_from_config(cfg) == pytest.approx(50.0)
        with pytest.raises(ConfigError):
            tan2phi_from_config(SystemConfig(Omega_C=0.0))

    def test_agreement_slow(self):
        cfg = SystemConfig(theta=0.0, K=1.0, Omega_C=2.0, omega41=100.0, omega21=1e4)
        assert consistency_check(cfg) < 1e-3

    def test_agreement_balanced_exact(self):
        cfg = SystemConfig(theta=PI / 4, omega41=100.0, omega21=1e4)
        assert consistency_check(cfg) < 1e-12

    def test_agreement_negative(self):
        cfg = SystemConfig(theta=3 * PI / 8, K=1.0, Omega_C=2.0,
                           omega41=100.0, omega21=1e4)
        assert consistency_check(cfg) < 1e-3
        vg = dispersion_sample(cfg, 0.0).vg_over_c
        assert vg < 0

    def test_error_dominated_by_fd_step(self):
        # the two routes differ only by finite-difference truncation: the
        # residual drops ~100x when the step drops 10x
        cfg = SystemConfig(theta=0.0, omega41=100.0, omega21=1e4)
        coarse = consistency_check(cfg, h=1e-3)
        fine = consistency_check(cfg, h=1e-4)
        assert fine < coarse / 50.0
