"""Slice-theory hydrodynamic joint torques: drag, added mass, buoyancy.

Each link is cut into slices; every slice sees a per-length force

    dF/dl = 1/2 rho Cd D |v| v  +  rho Cm A vdot

with D the cross-section dimension facing the motion and A the effective
cross-section area. Integrating (lever arm x force) along each link gives
the joint torques. Because drag is quadratic in the slice velocity, the
torque of each joint-induced velocity contribution is integrated
separately and the contributions summed; that term-by-term structure is
an approximation to the true quadratic coupling, but it is exactly what
makes the totals linear in Cd and Cm:

    tau_d = alpha * Cd,   tau_m = beta * Cm

with state-dependent gains (alpha, beta) that the identification module
regresses against measured torques. Buoyancy torques are gravity torques
scaled by rho_water / rho_link (centroid and buoyancy centre coincide).
Sign convention: buoyancy positive, so tau_w = tau_f - tau_d - tau_m.

The lever of each slice about the driving joint is taken as the partial
derivative of the slice velocity with respect to that joint's rate, which
makes single-rate drag dissipative; cross-coupling terms (calf slices
moved by one joint, reacting about another) use the triangle projection
cos(angle) of the slice radius onto the force direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DomainError
from .geometry import EnvParams, LegGeometry, LegState
from .kinematics import (cos_slice_angle, normal_acceleration, normal_velocity,
                         slice_radius)
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec, integrate


@dataclass(frozen=True)
class HydroCoeffs:
    """Drag and added-mass coefficients (dimensionless).

    Fitted values may come out negative on pathological data; that is a
    diagnostic, so no sign constraint is enforced here.
    """

    Cd: float
    Cm: float

    def __post_init__(self):
        if not (math.isfinite(self.Cd) and math.isfinite(self.Cm)):
            raise ValueError("coefficients must be finite")


@dataclass(frozen=True)
class TorqueBreakdown:
    """Per-joint torque components at one state; index 0 is joint 1.

    tau_w = tau_f - tau_d - tau_m holds exactly, as does the gain
    decomposition tau_d = alpha_gain * Cd, tau_m = beta_gain * Cm.
    """

    tau_w: np.ndarray
    tau_f: np.ndarray
    tau_d: np.ndarray
    tau_m: np.ndarray
    alpha_gain: np.ndarray
    beta_gain: np.ndarray


def morison_slice_force(v: float, vdot: float, D: float, A: float,
                        env: EnvParams, coeffs: HydroCoeffs):
    """Per-length hydrodynamic force on a slice, N/m.

    Quadratic drag plus inertial reaction of the accelerated water.
    """
    if D < 0 or A < 0:
        raise ValueError("D and A must be non-negative")
    return (0.5 * env.rho_water * coeffs.Cd * D * np.abs(v) * v
            + env.rho_water * coeffs.Cm * A * vdot)


def single_link_drag_torque(length: float, D: float, omega: float,
                            env: EnvParams, Cd: float,
                            quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Drag torque of a single link spinning about one end at rate omega.

    Integral of x * v |v| with v = omega x; closed form
    1/2 rho Cd D omega |omega| l^4 / 4.
    """
    if length <= 0:
        raise ValueError("length must be strictly positive")
    val = integrate(lambda x: x * (omega * x) * np.abs(omega * x), 0.0, length, quad)
    return 0.5 * env.rho_water * Cd * D * val


def single_link_added_mass_torque(length: float, A: float, omega_dot: float,
                                  env: EnvParams, Cm: float,
                                  quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Added-mass torque of a single link under angular acceleration.

    Integral of x * vdot with vdot = omega_dot x; closed form
    rho Cm A omega_dot l^3 / 3.
    """
    if length <= 0:
        raise ValueError("length must be strictly positive")
    val = integrate(lambda x: x * (omega_dot * x), 0.0, length, quad)
    return env.rho_water * Cm * A * val


def _drag_gain(j: int, state: LegState, geom: LegGeometry, env: EnvParams,
               quad: QuadratureSpec) -> float:
    """Drag torque of joint j at Cd = 1.

    The link-1 self term vanishes identically (hub radius zero), so it is
    not evaluated.
    """
    v = normal_velocity
    if j == 1:
        arm21 = lambda x: x * math.cos(state.q2)
        arm31 = lambda x: (geom.L2 * math.cos(state.q2)
                           + x * math.sin(state.q2 + state.q3))
        total = (geom.D21 * integrate(
                    lambda x: arm21(x) * v(1, 2, x, state, geom)
                    * np.abs(v(1, 2, x, state, geom)), 0.0, geom.L2, quad)
                 + geom.D31 * integrate(
                    lambda x: arm31(x) * v(1, 3, x, state, geom)
                    * np.abs(v(1, 3, x, state, geom)), 0.0, geom.L3, quad))
    elif j == 2:
        total = (geom.D22 * integrate(
                    lambda x: x * v(2, 2, x, state, geom)
                    * np.abs(v(2, 2, x, state, geom)), 0.0, geom.L2, quad)
                 + geom.D32 * integrate(
                    lambda x: slice_radius(x, state.q3, geom)
                    * v(2, 3, x, state, geom)
                    * np.abs(v(2, 3, x, state, geom)), 0.0, geom.L3, quad)
                 + geom.D32 * integrate(
                    lambda x: slice_radius(x, state.q3, geom)
                    * cos_slice_angle(x, state.q3, geom)
                    * v(3, 3, x, state, geom)
                    * np.abs(v(3, 3, x, state, geom)), 0.0, geom.L3, quad))
    elif j == 3:
        total = geom.D32 * (
            integrate(lambda x: x * v(3, 3, x, state, geom)
                      * np.abs(v(3, 3, x, state, geom)), 0.0, geom.L3, quad)
            + integrate(lambda x: x * cos_slice_angle(x, state.q3, geom)
                        * v(2, 3, x, state, geom)
                        * np.abs(v(2, 3, x, state, geom)), 0.0, geom.L3, quad))
    else:
        raise DomainError(f"joint index must be 1, 2 or 3, got {j}")
    return 0.5 * env.rho_water * total


def _added_mass_gain(j: int, state: LegState, geom: LegGeometry, env: EnvParams,
                     quad: QuadratureSpec) -> float:
    """Added-mass torque of joint j at Cm = 1.

    For joints 2 and 3 the cross term integrates the acceleration of the
    hip-induced calf velocity (not the knee-induced one), mirroring the
    velocity whose reaction actually loads that lever.
    """
    vd = normal_acceleration
    if j == 1:
        arm21 = lambda x: x * math.cos(state.q2)
        arm31 = lambda x: (geom.L2 * math.cos(state.q2)
                           + x * math.sin(state.q2 + state.q3))
        total = (geom.A2 * integrate(
                    lambda x: arm21(x) * vd(1, 2, x, state, geom), 0.0, geom.L2, quad)
                 + geom.A3 * integrate(
                    lambda x: arm31(x) * vd(1, 3, x, state, geom), 0.0, geom.L3, quad))
    elif j == 2:
        total = (geom.A2 * integrate(
                    lambda x: x * vd(2, 2, x, state, geom), 0.0, geom.L2, quad)
                 + geom.A3 * integrate(
                    lambda x: slice_radius(x, state.q3, geom)
                    * vd(2, 3, x, state, geom), 0.0, geom.L3, quad)
                 + geom.A3 * integrate(
                    lambda x: slice_radius(x, state.q3, geom)
                    * cos_slice_angle(x, state.q3, geom)
                    * vd(2, 3, x, state, geom), 0.0, geom.L3, quad))
    elif j == 3:
        total = geom.A3 * (
            integrate(lambda x: x * vd(3, 3, x, state, geom), 0.0, geom.L3, quad)
            + integrate(lambda x: x * cos_slice_angle(x, state.q3, geom)
                        * vd(2, 3, x, state, geom), 0.0, geom.L3, quad))
    else:
        raise DomainError(f"joint index must be 1, 2 or 3, got {j}")
    return env.rho_water * total


def drag_torque_joint(j: int, state: LegState, geom: LegGeometry,
                      env: EnvParams, Cd: float,
                      quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Water-resistance torque on joint j, N m."""
    return Cd * _drag_gain(j, state, geom, env, quad)


def added_mass_torque_joint(j: int, state: LegState, geom: LegGeometry,
                            env: EnvParams, Cm: float,
                            quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Added-mass torque on joint j, N m."""
    return Cm * _added_mass_gain(j, state, geom, env, quad)


def buoyancy_torque_joint(j: int, state: LegState, geom: LegGeometry,
                          env: EnvParams) -> float:
    """Buoyancy torque on joint j, N m.

    Joint 1 sees none (its axis is parallel to buoyancy). Joints 2 and 3
    see the gravity torque of the supported links scaled by
    rho_water / rho_link.
    """
    scale = env.buoyancy_scale(geom)
    c2 = math.cos(state.q2)
    s23 = math.sin(state.q2 + state.q3)
    if j == 1:
        return 0.0
    if j == 2:
        return (geom.m2 * geom.g * geom.Lc2 * c2
                + geom.m3 * geom.g * (geom.L2 * c2 + geom.Lc3 * s23)) * scale
    if j == 3:
        return geom.m3 * geom.g * geom.Lc3 * s23 * scale
    raise DomainError(f"joint index must be 1, 2 or 3, got {j}")


def gain_coefficients(state: LegState, geom: LegGeometry, env: EnvParams,
                      quad: QuadratureSpec = DEFAULT_QUADRATURE
                      ) -> tuple[np.ndarray, np.ndarray]:
    """Per-joint (alpha, beta): drag torque at Cd = 1, added-mass at Cm = 1."""
    alpha = np.array([_drag_gain(j, state, geom, env, quad) for j in (1, 2, 3)])
    beta = np.array([_added_mass_gain(j, state, geom, env, quad) for j in (1, 2, 3)])
    return alpha, beta


def total_hydro_torque(state: LegState, geom: LegGeometry, env: EnvParams,
                       coeffs: HydroCoeffs,
                       quad: QuadratureSpec = DEFAULT_QUADRATURE) -> TorqueBreakdown:
    """All torque components and gains for one state."""
    alpha, beta = gain_coefficients(state, geom, env, quad)
    tau_f = np.array([buoyancy_torque_joint(j, state, geom, env) for j in (1, 2, 3)])
    tau_d = coeffs.Cd * alpha
    tau_m = coeffs.Cm * beta
    return TorqueBreakdown(tau_w=tau_f - tau_d - tau_m, tau_f=tau_f,
                           tau_d=tau_d, tau_m=tau_m,
                           alpha_gain=alpha, beta_gain=beta)


@dataclass(frozen=True)
class BreakdownTable:
    """Torque breakdown of a whole trajectory; arrays are (n_samples, 3)."""

    t: np.ndarray
    tau_w: np.ndarray
    tau_f: np.ndarray
    tau_d: np.ndarray
    tau_m: np.ndarray
    alpha_gain: np.ndarray
    beta_gain: np.ndarray


def batch_gains(states: np.ndarray, geom: LegGeometry, env: EnvParams,
                quad: QuadratureSpec = DEFAULT_QUADRATURE,
                force_backend: str | None = None
                ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(alpha, beta, tau_f) for a batch of states, each (n_samples, 3).

    ``states`` holds one row per sample, columns
    (q1, q2, q3, dq1, dq2, dq3, ddq1, ddq2, ddq3). Dispatches to the
    compiled kernel when available, the vectorised fallback otherwise.
    """
    return backend.gains_batch(states, geom, env, quad, force_backend)


def batch_breakdown(t: np.ndarray, states: np.ndarray, geom: LegGeometry,
                    env: EnvParams, coeffs: HydroCoeffs,
                    quad: QuadratureSpec = DEFAULT_QUADRATURE,
                    force_backend: str | None = None) -> BreakdownTable:
    """Torque breakdown for every sample of a trajectory."""
    alpha, beta, tau_f = batch_gains(states, geom, env, quad, force_backend)
    tau_d = coeffs.Cd * alpha
    tau_m = coeffs.Cm * beta
    return BreakdownTable(t=np.asarray(t, dtype=float),
                          tau_w=tau_f - tau_d - tau_m, tau_f=tau_f,
                          tau_d=tau_d, tau_m=tau_m,
                          alpha_gain=alpha, beta_gain=beta)
