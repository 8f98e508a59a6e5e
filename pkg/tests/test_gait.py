import dataclasses
import math

import numpy as np
import pytest

from uwleg import (GaitSpec, HydroCoeffs, NoiseSpec, assemble_regression,
                   default_gait, fit_hydro_params, gen_trajectory,
                   load_gait_spec, samples_from_log, synthesize_measurements)
from uwleg.errors import ReachabilityError
from uwleg.gait import foot_path
from uwleg.torques import batch_gains


class TestGaitSpec:
    def test_default_sample_count(self):
        assert default_gait().sample_count == 500

    def test_validation(self):
        with pytest.raises(ValueError):
            GaitSpec(period=0.0)
        with pytest.raises(ValueError):
            GaitSpec(mode="hop")
        with pytest.raises(ValueError):
            GaitSpec(cycles=0)
        with pytest.raises(ValueError):
            GaitSpec(amplitude=(0.1, 0.2))
        with pytest.raises(ValueError):
            GaitSpec(semi_axes=(0.1, 0.2, 0.3))

    def test_yaml_roundtrip(self, tmp_path):
        path = tmp_path / "gait.yaml"
        path.write_text(
            "mode: joint_sinusoid\nperiod: 4.0\nsample_rate: 50.0\n"
            "cycles: 3\namplitude: [0.2, 0.1, 0.1]\n", encoding="utf-8")
        spec = load_gait_spec(path)
        assert spec.period == 4.0
        assert spec.amplitude == (0.2, 0.1, 0.1)
        assert spec.sample_count == 600

    def test_yaml_unknown_key(self, tmp_path):
        path = tmp_path / "gait.yaml"
        path.write_text("stride: 0.3\n", encoding="utf-8")
        with pytest.raises(ValueError):
            load_gait_spec(path)


class TestSinusoidTrajectory:
    def test_zero_amplitude_is_constant(self, geom):
        spec = GaitSpec(amplitude=(0.0, 0.0, 0.0))
        traj = gen_trajectory(spec, geom)
        assert np.all(traj.q == traj.q[0])
        assert np.all(traj.dq == 0.0) and np.all(traj.ddq == 0.0)

    def test_peak_rate_closed_form(self, geom):
        amp, period = 0.3, 2.5
        spec = GaitSpec(period=period, sample_rate=400.0, cycles=1,
                        amplitude=(0.0, amp, 0.0), phase=(0.0, 0.0, 0.0))
        traj = gen_trajectory(spec, geom)
        assert np.max(np.abs(traj.dq[:, 1])) == pytest.approx(
            2 * math.pi * amp / period, rel=1e-4)
        assert np.max(np.abs(traj.dq[:, 1])) <= 2 * math.pi * amp / period

    def test_rates_match_finite_differences(self, geom):
        traj = gen_trajectory(default_gait(), geom)
        h = traj.t[1] - traj.t[0]
        fd = (traj.q[2:] - traj.q[:-2]) / (2 * h)
        assert np.max(np.abs(fd - traj.dq[1:-1])) < 1e-3 * np.max(np.abs(traj.dq))
        fd2 = (traj.dq[2:] - traj.dq[:-2]) / (2 * h)
        assert np.max(np.abs(fd2 - traj.ddq[1:-1])) < 1e-3 * np.max(np.abs(traj.ddq))


class TestEllipseTrajectory:
    def test_feet_lie_on_commanded_ellipse(self, geom):
        spec = GaitSpec(mode="foot_ellipse", period=2.0, sample_rate=60.0,
                        cycles=2)
        traj = gen_trajectory(spec, geom)
        feet = foot_path(traj, geom)
        cx, cy, cz = spec.ellipse_center
        a, b = spec.semi_axes
        horiz = np.hypot(feet[:, 0], feet[:, 1]) - math.hypot(cx, cy)
        vert = feet[:, 2] - cz
        residual = (horiz / a) ** 2 + (vert / b) ** 2 - 1.0
        assert np.max(np.abs(residual)) < 1e-6

    def test_spline_rates_consistent_with_positions(self, geom):
        spec = GaitSpec(mode="foot_ellipse", period=2.0, sample_rate=100.0,
                        cycles=1)
        traj = gen_trajectory(spec, geom)
        h = traj.t[1] - traj.t[0]
        fd = (traj.q[2:] - traj.q[:-2]) / (2 * h)
        assert np.max(np.abs(fd - traj.dq[1:-1])) < 5e-3

    def test_unreachable_ellipse_rejected(self, geom):
        spec = GaitSpec(mode="foot_ellipse",
                        ellipse_center=(1.36, 0.0, 0.0), semi_axes=(0.1, 0.1))
        with pytest.raises(ReachabilityError):
            gen_trajectory(spec, geom)

    def test_centre_on_axis_rejected(self, geom):
        spec = GaitSpec(mode="foot_ellipse", ellipse_center=(0.0, 0.0, -0.9))
        with pytest.raises(ValueError):
            gen_trajectory(spec, geom)


class TestSynthesizeMeasurements:
    def test_noiseless_differencing_is_exact(self, geom, env):
        truth = HydroCoeffs(2.2, 0.5)
        traj = gen_trajectory(default_gait(), geom)
        log = synthesize_measurements(traj, geom, env, truth)
        alpha, beta, tau_f = batch_gains(traj.states, geom, env)
        tau_w = tau_f - truth.Cd * alpha - truth.Cm * beta
        assert np.array_equal(log.tau_land - log.tau_water, tau_w)

    def test_seed_determinism(self, geom, env, coeffs):
        traj = gen_trajectory(default_gait(), geom)
        a = synthesize_measurements(traj, geom, env, coeffs, NoiseSpec(0.4, 7))
        b = synthesize_measurements(traj, geom, env, coeffs, NoiseSpec(0.4, 7))
        assert np.array_equal(a.tau_land, b.tau_land)
        assert np.array_equal(a.tau_water, b.tau_water)
        c = synthesize_measurements(traj, geom, env, coeffs, NoiseSpec(0.4, 8))
        assert not np.array_equal(a.tau_land, c.tau_land)

    def test_differenced_noise_variance(self, geom, env, coeffs):
        # Two independently noisy logs difference to variance 2 sigma^2.
        sigma = 0.5
        spec = dataclasses.replace(default_gait(), sample_rate=125.0)  # 2000
        traj = gen_trajectory(spec, geom)
        log = synthesize_measurements(traj, geom, env, coeffs,
                                      NoiseSpec(sigma, seed=21))
        alpha, beta, tau_f = batch_gains(traj.states, geom, env)
        tau_w = tau_f - coeffs.Cd * alpha - coeffs.Cm * beta
        residual = (log.tau_land - log.tau_water) - tau_w
        assert np.var(residual) == pytest.approx(2 * sigma**2, rel=0.1)

    def test_baseline_cancels_in_differencing(self, geom, env, coeffs):
        traj = gen_trajectory(default_gait(), geom)
        baseline = lambda t: np.column_stack([np.sin(t), np.cos(t), t])
        log = synthesize_measurements(traj, geom, env, coeffs,
                                      tau_land_baseline=baseline)
        plain = synthesize_measurements(traj, geom, env, coeffs)
        assert np.allclose(log.tau_land - log.tau_water,
                           plain.tau_land - plain.tau_water)


class TestClosedLoop:
    def test_randomised_gaits_recover_truth(self, geom, env):
        rng = np.random.default_rng(211)
        for trial in range(20):
            spec = GaitSpec(
                period=rng.uniform(5.0, 12.0),
                sample_rate=25.0,
                cycles=2,
                center=(0.0, rng.uniform(0.2, 0.5), rng.uniform(0.8, 1.2)),
                amplitude=tuple(rng.uniform(0.1, 0.35, 3)),
                phase=tuple(rng.uniform(0.0, 2 * np.pi, 3)),
            )
            truth = HydroCoeffs(Cd=rng.uniform(0.5, 3.0),
                                Cm=rng.uniform(0.1, 1.5))
            traj = gen_trajectory(spec, geom)
            log = synthesize_measurements(traj, geom, env, truth)
            result = fit_hydro_params(
                assemble_regression(samples_from_log(log), geom, env))
            assert result.Cd_hat == pytest.approx(truth.Cd, rel=1e-9)
            assert result.Cm_hat == pytest.approx(truth.Cm, rel=1e-9)
