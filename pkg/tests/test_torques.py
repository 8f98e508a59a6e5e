import math

import numpy as np
import pytest

from uwleg import (EnvParams, HydroCoeffs, LegState, QuadratureSpec,
                   added_mass_torque_joint, buoyancy_torque_joint,
                   drag_torque_joint, gain_coefficients, morison_slice_force,
                   single_link_added_mass_torque, single_link_drag_torque,
                   total_hydro_torque)
from uwleg.torques import batch_breakdown, batch_gains

from conftest import random_state, random_states


class TestMorisonSliceForce:
    def test_still_water_still_body(self, env, coeffs):
        assert morison_slice_force(0.0, 0.0, 0.131, 0.01, env, coeffs) == 0.0

    def test_drag_only_value(self, env):
        # 1/2 * 1000 * 2.2 * 0.131 = 144.1 N/m at v = 1 m/s.
        force = morison_slice_force(1.0, 0.0, 0.131, 0.0, env,
                                    HydroCoeffs(2.2, 0.5))
        assert force == pytest.approx(144.1)

    def test_drag_odd_in_velocity(self, env, coeffs):
        plus = morison_slice_force(1.0, 0.0, 0.2, 0.0, env, coeffs)
        minus = morison_slice_force(-1.0, 0.0, 0.2, 0.0, env, coeffs)
        assert minus == pytest.approx(-plus)

    def test_added_mass_linear_in_vdot(self, env, coeffs):
        one = morison_slice_force(0.0, 1.0, 0.0, 0.03, env, coeffs)
        three = morison_slice_force(0.0, 3.0, 0.0, 0.03, env, coeffs)
        assert three == pytest.approx(3 * one)

    def test_negative_dimensions_rejected(self, env, coeffs):
        with pytest.raises(ValueError):
            morison_slice_force(1.0, 0.0, -0.1, 0.0, env, coeffs)


class TestSingleLinkTorques:
    def test_drag_zero_rate(self, env):
        assert single_link_drag_torque(0.714, 0.131, 0.0, env, 2.2) == 0.0

    def test_drag_closed_form_value(self, env):
        # 1/2 rho Cd D w|w| l^4 / 4 with the calf dimensions.
        value = single_link_drag_torque(0.714, 0.131, 1.0, env, 2.2)
        assert value == pytest.approx(144.1 * 0.714**4 / 4)
        assert value == pytest.approx(9.363, abs=5e-4)

    def test_drag_quadratic_in_rate(self, env):
        one = single_link_drag_torque(0.6, 0.2, 1.3, env, 2.0)
        two = single_link_drag_torque(0.6, 0.2, 2.6, env, 2.0)
        assert two == pytest.approx(4 * one)

    def test_added_mass_zero_acceleration(self, env):
        assert single_link_added_mass_torque(0.7, 0.03, 0.0, env, 0.5) == 0.0

    def test_added_mass_closed_form_value(self, env):
        area = 0.131 * 0.279
        value = single_link_added_mass_torque(0.714, area, 1.0, env, 0.5)
        assert value == pytest.approx(1000 * 0.5 * area * 0.714**3 / 3)
        assert value == pytest.approx(2.217, abs=5e-4)

    def test_added_mass_linear_in_acceleration(self, env):
        one = single_link_added_mass_torque(0.5, 0.02, 0.7, env, 1.1)
        two = single_link_added_mass_torque(0.5, 0.02, 1.4, env, 1.1)
        assert two == pytest.approx(2 * one)

    def test_closed_forms_over_random_draws(self, env):
        rng = np.random.default_rng(31)
        for _ in range(1000):
            length = rng.uniform(0.05, 2.0)
            width = rng.uniform(0.0, 0.5)
            rate = rng.uniform(-3.0, 3.0)
            cd = rng.uniform(0.1, 3.0)
            drag = single_link_drag_torque(length, width, rate, env, cd)
            closed = (0.5 * env.rho_water * cd * width * rate * abs(rate)
                      * length**4 / 4)
            assert drag == pytest.approx(closed, rel=1e-10, abs=1e-12)
            area = rng.uniform(0.0, 0.1)
            acc = rng.uniform(-3.0, 3.0)
            cm = rng.uniform(0.1, 2.0)
            inertial = single_link_added_mass_torque(length, area, acc, env, cm)
            closed = env.rho_water * cm * area * acc * length**3 / 3
            assert inertial == pytest.approx(closed, rel=1e-10, abs=1e-12)

    def test_non_positive_length_rejected(self, env):
        with pytest.raises(ValueError):
            single_link_drag_torque(0.0, 0.1, 1.0, env, 2.0)


class TestDragTorqueJoint:
    def test_static_is_zero(self, geom, env):
        st = LegState(q2=0.4, q3=1.0)
        for j in (1, 2, 3):
            assert drag_torque_joint(j, st, geom, env, 2.2) == 0.0

    def test_knee_term_matches_single_link(self, geom, env):
        # With only the knee moving, the knee's own term is the whole
        # single-link integral; the hip cross term vanishes with dq2 = 0.
        st = LegState(q2=0.3, q3=0.9, dq3=1.4)
        expected = single_link_drag_torque(geom.L3, geom.D32, st.dq3, env, 2.2)
        assert drag_torque_joint(3, st, geom, env, 2.2) == pytest.approx(
            expected, rel=1e-10)

    def test_hip_roll_stretched_pose_closed_form(self, geom, env):
        # Stretched calf, hip roll at 1 rad/s: both integrands become
        # polynomials with elementary antiderivatives.
        st = LegState(q3=math.pi / 2, dq2=1.0)
        thigh = 0.5 * env.rho_water * 2.2 * geom.D22 * geom.L2**4 / 4
        calf = (0.5 * env.rho_water * 2.2 * geom.D32
                * ((geom.L2 + geom.L3)**4 - geom.L2**4) / 4)
        total = drag_torque_joint(2, st, geom, env, 2.2)
        assert total == pytest.approx(thigh + calf, rel=1e-12)
        assert total - thigh == pytest.approx(calf, rel=1e-10)

    def test_yaw_gain_link_decomposition(self, geom, env, quad):
        # Removing the calf contribution changes the yaw gain by exactly
        # the hand-set calf integral (thigh term is a plain polynomial).
        st = LegState(q2=0.25, q3=0.8, dq1=1.2)
        thigh_only = (0.5 * env.rho_water * geom.D21
                      * abs(st.dq1) * st.dq1 * math.cos(st.q2)**2
                      * abs(math.cos(st.q2)) * geom.L2**4 / 4)
        from uwleg.quadrature import integrate
        arm = lambda x: (geom.L2 * math.cos(st.q2)
                         + x * math.sin(st.q2 + st.q3))
        calf = (0.5 * env.rho_water * geom.D31
                * integrate(lambda x: arm(x) * (st.dq1 * arm(x))
                            * np.abs(st.dq1 * arm(x)), 0.0, geom.L3, quad))
        assert drag_torque_joint(1, st, geom, env, 1.0) == pytest.approx(
            thigh_only + calf, rel=1e-10)

    def test_drag_odd_under_rate_reversal(self, geom, env):
        rng = np.random.default_rng(37)
        for _ in range(30):
            st = random_state(rng)
            flipped = LegState(st.q1, st.q2, st.q3,
                               -st.dq1, -st.dq2, -st.dq3,
                               -st.ddq1, -st.ddq2, -st.ddq3)
            for j in (1, 2, 3):
                assert drag_torque_joint(j, flipped, geom, env, 2.2) == \
                    pytest.approx(-drag_torque_joint(j, st, geom, env, 2.2),
                                  rel=1e-10, abs=1e-12)

    def test_single_rate_drag_dissipates(self, geom, env):
        rng = np.random.default_rng(41)
        for _ in range(60):
            base = random_state(rng)
            for j, rate in ((1, "dq1"), (2, "dq2"), (3, "dq3")):
                kwargs = dict(q1=base.q1, q2=base.q2, q3=base.q3)
                kwargs[rate] = rng.uniform(-2.0, 2.0)
                st = LegState(**kwargs)
                tau = drag_torque_joint(j, st, geom, env, 2.2)
                assert tau * getattr(st, rate) >= -1e-12


class TestAddedMassTorqueJoint:
    def test_static_is_zero(self, geom, env):
        st = LegState(q2=0.2, q3=1.1)
        for j in (1, 2, 3):
            assert added_mass_torque_joint(j, st, geom, env, 0.5) == 0.0

    def test_constant_rate_single_link_is_zero(self, geom, env):
        # Knee spinning at constant rate: its own slice acceleration is
        # zero, so the knee torque reduces to the (zero-rate) cross term.
        st = LegState(dq3=1.0)
        assert added_mass_torque_joint(3, st, geom, env, 0.5) == pytest.approx(0.0)

    def test_linear_in_accelerations_at_zero_rates(self, geom, env):
        rng = np.random.default_rng(43)
        for _ in range(20):
            q = rng.uniform(-1.0, 1.0, 3)
            ddq = rng.uniform(-2.0, 2.0, 3)
            st1 = LegState(q1=q[0], q2=q[1], q3=q[2],
                           ddq1=ddq[0], ddq2=ddq[1], ddq3=ddq[2])
            st3 = LegState(q1=q[0], q2=q[1], q3=q[2],
                           ddq1=3 * ddq[0], ddq2=3 * ddq[1], ddq3=3 * ddq[2])
            for j in (1, 2, 3):
                one = added_mass_torque_joint(j, st1, geom, env, 0.5)
                three = added_mass_torque_joint(j, st3, geom, env, 0.5)
                assert three == pytest.approx(3 * one, rel=1e-10, abs=1e-12)

    def test_knee_term_matches_single_link(self, geom, env):
        st = LegState(q2=0.5, q3=0.7, ddq3=1.3)
        expected = single_link_added_mass_torque(geom.L3, geom.A3, st.ddq3,
                                                 env, 0.5)
        assert added_mass_torque_joint(3, st, geom, env, 0.5) == pytest.approx(
            expected, rel=1e-10)


class TestBuoyancyTorque:
    def test_yaw_joint_sees_none(self, geom, env):
        rng = np.random.default_rng(47)
        for _ in range(50):
            assert buoyancy_torque_joint(1, random_state(rng), geom, env) == 0.0

    def test_knee_quarter_pose_value(self, geom, env):
        st = LegState(q2=0.6, q3=math.pi / 2 - 0.6)
        expected = 10.375 * 9.81 * 0.560 * (1000.0 / 2700.0)
        assert buoyancy_torque_joint(3, st, geom, env) == pytest.approx(expected)
        assert expected == pytest.approx(21.11, abs=5e-3)

    def test_hip_roll_vertical_thigh(self, geom, env):
        # q2 = pi/2, q3 = 0: thigh cosines vanish, sin(q2+q3) = 1.
        st = LegState(q2=math.pi / 2, q3=0.0)
        expected = geom.m3 * geom.g * geom.Lc3 * (1000.0 / 2700.0)
        assert buoyancy_torque_joint(2, st, geom, env) == pytest.approx(expected)


class TestTotalHydroTorque:
    def test_static_pose_reduces_to_buoyancy(self, geom, env, coeffs):
        st = LegState(q2=0.4, q3=0.9)
        bd = total_hydro_torque(st, geom, env, coeffs)
        assert np.all(bd.tau_d == 0.0) and np.all(bd.tau_m == 0.0)
        assert np.allclose(bd.tau_w, bd.tau_f)

    def test_decomposition_identity(self, geom, env, coeffs):
        rng = np.random.default_rng(53)
        for _ in range(20):
            bd = total_hydro_torque(random_state(rng), geom, env, coeffs)
            assert np.array_equal(bd.tau_w, bd.tau_f - bd.tau_d - bd.tau_m)

    def test_gain_linearity_exact(self, geom, env):
        rng = np.random.default_rng(59)
        st = random_state(rng)
        bd = total_hydro_torque(st, geom, env, HydroCoeffs(2.2, 0.5))
        assert np.allclose(bd.tau_d, 2.2 * bd.alpha_gain, rtol=1e-12)
        assert np.allclose(bd.tau_m, 0.5 * bd.beta_gain, rtol=1e-12)

    def test_neutral_buoyancy_scale(self, geom, coeffs):
        # Water density equal to link density: buoyancy equals the raw
        # gravity torque expression.
        heavy_water = EnvParams(rho_water=geom.rho_link)
        st = LegState(q2=0.5, q3=0.5)
        bd = total_hydro_torque(st, geom, heavy_water, coeffs)
        raw = (geom.m2 * geom.g * geom.Lc2 * math.cos(st.q2)
               + geom.m3 * geom.g * (geom.L2 * math.cos(st.q2)
                                     + geom.Lc3 * math.sin(st.q2 + st.q3)))
        assert bd.tau_f[1] == pytest.approx(raw, rel=1e-14)


class TestGainCoefficients:
    def test_static_gains_vanish(self, geom, env):
        alpha, beta = gain_coefficients(LegState(q2=0.3, q3=1.2), geom, env)
        assert np.all(alpha == 0.0) and np.all(beta == 0.0)

    def test_proportionality_across_coefficients(self, geom, env):
        rng = np.random.default_rng(61)
        st = random_state(rng)
        alpha, _ = gain_coefficients(st, geom, env)
        for c in (0.5, 1.0, 2.0):
            for j in (1, 2, 3):
                assert drag_torque_joint(j, st, geom, env, c) == pytest.approx(
                    c * alpha[j - 1], rel=1e-12, abs=1e-14)


class TestQuadratureConvergence:
    def test_node_doubling_on_all_joint_integrands(self, geom, env):
        # Stance envelope: levers keep one sign along each link, so every
        # |v| v integrand is smooth and the fixed rule sits deep in its
        # convergence plateau. Fold-back poses (a lever crossing zero mid
        # link) would kink the drag integrands and are excluded.
        rng = np.random.default_rng(67)
        n = 1000
        q2 = rng.uniform(-np.pi / 2 + 0.1, np.pi / 2 - 0.1, n)
        calf_elev = rng.uniform(0.1, np.pi - 0.1, n)  # q2 + q3
        q3 = calf_elev - q2
        keep = (q3 > -np.pi / 4) & (q3 < np.pi)
        states = np.column_stack([
            rng.uniform(-np.pi, np.pi, n), q2, q3,
            rng.uniform(-1.0, 1.0, (n, 3)),
            rng.uniform(-2.0, 2.0, (n, 3)),
        ])[keep]
        assert len(states) > 500
        a32, b32, _ = batch_gains(states, geom, env, QuadratureSpec(32))
        a64, b64, _ = batch_gains(states, geom, env, QuadratureSpec(64))
        assert np.max(np.abs(a32 - a64)) / np.max(np.abs(a64)) < 1e-10
        assert np.max(np.abs(b32 - b64)) / np.max(np.abs(b64)) < 1e-10


class TestBatchBreakdown:
    def test_matches_scalar_path(self, geom, env, coeffs, quad):
        rng = np.random.default_rng(71)
        states = random_states(rng, 10)
        t = np.arange(10) * 0.1
        table = batch_breakdown(t, states, geom, env, coeffs, quad)
        for i in range(10):
            bd = total_hydro_torque(LegState.from_row(states[i]), geom, env,
                                    coeffs, quad)
            for name in ("tau_w", "tau_f", "tau_d", "tau_m",
                         "alpha_gain", "beta_gain"):
                assert np.allclose(getattr(table, name)[i],
                                   getattr(bd, name), rtol=1e-10, atol=1e-12)
