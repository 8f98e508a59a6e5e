"""Gait generation and synthetic land/water torque experiments.

Two trajectory modes:

* ``joint_sinusoid`` drives each joint with a sinusoid, so rates and
  accelerations are exact closed forms. Preferred for identification
  experiments because no differentiation error enters the gain rows.
* ``foot_ellipse`` traces an ellipse with the foot in the vertical plane
  through the yaw axis, solved by inverse kinematics sample by sample.
  Rates and accelerations come from differentiating a cubic spline fitted
  through the angle samples (padded beyond both ends so the derivative
  accuracy is uniform over the window).

``synthesize_measurements`` emulates a paired test campaign: the same
trajectory is "run" on land and underwater, the underwater log differing
by the model hydrodynamic torque at known true coefficients, and both
logs carrying independent sensor noise. Differencing the noiseless logs
recovers the model torque exactly, which makes the whole identification
pipeline verifiable end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .geometry import EnvParams, LegGeometry
from .kinematics import fk_foot, ik_leg
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec
from .torques import HydroCoeffs, batch_gains

# Samples of spline padding on each side of the window (ellipse mode).
_SPLINE_PAD = 8


@dataclass(frozen=True)
class GaitSpec:
    """Parameters of a generated gait.

    Sinusoid mode uses ``center``, ``amplitude`` and ``phase`` (one entry
    per joint). Ellipse mode uses ``ellipse_center`` (base frame, m) and
    ``semi_axes`` (horizontal, vertical, m); the ellipse must stay inside
    the reachable workspace.
    """

    mode: str = "joint_sinusoid"
    period: float = 8.0
    sample_rate: float = 31.25
    cycles: int = 2
    center: tuple[float, float, float] = (0.0, 0.35, 1.0)
    amplitude: tuple[float, float, float] = (0.4, 0.3, 0.3)
    phase: tuple[float, float, float] = (0.0, 0.5 * math.pi, math.pi)
    ellipse_center: tuple[float, float, float] = (0.9, 0.0, -0.35)
    semi_axes: tuple[float, float] = (0.12, 0.06)
    branch: str = "knee_up"

    def __post_init__(self):
        if self.mode not in ("joint_sinusoid", "foot_ellipse"):
            raise ValueError(f"unknown gait mode {self.mode!r}")
        if self.period <= 0 or self.sample_rate <= 0:
            raise ValueError("period and sample_rate must be positive")
        if self.cycles < 1:
            raise ValueError("cycles must be at least 1")
        for name, want in (("center", 3), ("amplitude", 3), ("phase", 3),
                           ("ellipse_center", 3), ("semi_axes", 2)):
            if len(getattr(self, name)) != want:
                raise ValueError(f"{name} must have {want} entries")

    @property
    def sample_count(self) -> int:
        return round(self.cycles * self.period * self.sample_rate)


@dataclass(frozen=True)
class NoiseSpec:
    """Additive Gaussian torque noise, applied per joint and per log."""

    torque_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.torque_sigma < 0:
            raise ValueError("torque_sigma must be non-negative")


@dataclass(frozen=True)
class Trajectory:
    """Time-indexed joint states; q, dq, ddq are (n, 3)."""

    t: np.ndarray
    q: np.ndarray
    dq: np.ndarray
    ddq: np.ndarray

    @property
    def states(self) -> np.ndarray:
        """(n, 9) array in kernel column order (q, dq, ddq)."""
        return np.column_stack([self.q, self.dq, self.ddq])

    def __len__(self) -> int:
        return len(self.t)


@dataclass(frozen=True)
class PairedLog:
    """Paired land / underwater torque logs over one trajectory."""

    t: np.ndarray
    states: np.ndarray
    tau_land: np.ndarray
    tau_water: np.ndarray


def default_gait() -> GaitSpec:
    """Slow two-cycle sinusoid gait, 500 samples."""
    return GaitSpec()


def _sinusoid_states(spec: GaitSpec, t: np.ndarray):
    w = 2.0 * math.pi / spec.period
    center = np.asarray(spec.center)
    amp = np.asarray(spec.amplitude)
    phase = np.asarray(spec.phase)
    arg = w * t[:, None] + phase[None, :]
    q = center[None, :] + amp[None, :] * np.sin(arg)
    dq = amp[None, :] * w * np.cos(arg)
    ddq = -amp[None, :] * w * w * np.sin(arg)
    return q, dq, ddq


def _ellipse_point(spec: GaitSpec, theta: np.ndarray) -> np.ndarray:
    cx, cy, cz = spec.ellipse_center
    horiz = math.hypot(cx, cy)
    if horiz == 0.0:
        raise ValueError("ellipse centre must be off the yaw axis")
    ex, ey = cx / horiz, cy / horiz
    a, b = spec.semi_axes
    x = cx + a * np.cos(theta) * ex
    y = cy + a * np.cos(theta) * ey
    z = cz + b * np.sin(theta)
    return np.column_stack([x, y, z])


def gen_trajectory(spec: GaitSpec, geom: LegGeometry) -> Trajectory:
    """Generate a time-indexed state sequence for the given gait.

    Sinusoid rates/accelerations are exact; ellipse-mode ones are spline
    derivatives of the IK angle samples (O(h^2) accurate in the step).
    Raises :class:`ReachabilityError` if an ellipse sample leaves the
    workspace.
    """
    n = spec.sample_count
    h = 1.0 / spec.sample_rate
    t = np.arange(n) * h
    if spec.mode == "joint_sinusoid":
        q, dq, ddq = _sinusoid_states(spec, t)
    else:
        t_ext = np.arange(-_SPLINE_PAD, n + _SPLINE_PAD) * h
        theta = 2.0 * math.pi * t_ext / spec.period
        points = _ellipse_point(spec, theta)
        q_ext = np.array([ik_leg(p, geom, spec.branch) for p in points])
        spline = CubicSpline(t_ext, q_ext, axis=0)
        q = spline(t)
        dq = spline(t, 1)
        ddq = spline(t, 2)
    return Trajectory(t=t, q=q, dq=dq, ddq=ddq)


def foot_path(traj: Trajectory, geom: LegGeometry) -> np.ndarray:
    """Foot positions (n, 3) along a trajectory."""
    return np.array([fk_foot(qk, geom) for qk in traj.q])


def synthesize_measurements(traj: Trajectory, geom: LegGeometry,
                            env: EnvParams, true_coeffs: HydroCoeffs,
                            noise: NoiseSpec = NoiseSpec(),
                            quad: QuadratureSpec = DEFAULT_QUADRATURE,
                            tau_land_baseline=None) -> PairedLog:
    """Paired land/water torque logs consistent with known coefficients.

    The land log carries an arbitrary smooth baseline (default zero; any
    common baseline cancels in differencing). The underwater log is the
    baseline minus the model hydrodynamic torque, so
    ``tau_land - tau_water`` reproduces the model exactly in the
    noiseless case. Noise is drawn independently for the two logs, land
    first, from a generator seeded by ``noise.seed``.
    """
    states = traj.states
    alpha, beta, tau_f = batch_gains(states, geom, env, quad)
    tau_w = tau_f - true_coeffs.Cd * alpha - true_coeffs.Cm * beta
    if tau_land_baseline is None:
        base = np.zeros_like(tau_w)
    else:
        base = np.asarray(tau_land_baseline(traj.t), dtype=float)
        if base.shape != tau_w.shape:
            raise ValueError(
                f"baseline must return shape {tau_w.shape}, got {base.shape}")
    rng = np.random.default_rng(noise.seed)
    noise_land = noise.torque_sigma * rng.standard_normal(tau_w.shape)
    noise_water = noise.torque_sigma * rng.standard_normal(tau_w.shape)
    return PairedLog(t=traj.t.copy(), states=states,
                     tau_land=base + noise_land,
                     tau_water=base - tau_w + noise_water)


def load_gait_spec(path) -> GaitSpec:
    """Read a gait spec from a YAML key-value document.

    Keys mirror the :class:`GaitSpec` fields; list values are converted
    to tuples. Unknown keys are rejected.
    """
    import yaml

    with open(path, "r", encoding="utf-8") as fh:
        doc = yaml.safe_load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"gait spec {path} is not a key-value document")
    known = set(GaitSpec.__dataclass_fields__)
    unknown = set(doc) - known
    if unknown:
        raise ValueError(f"gait spec {path}: unknown key(s) {sorted(unknown)}")
    kwargs = {k: tuple(v) if isinstance(v, list) else v for k, v in doc.items()}
    return GaitSpec(**kwargs)


def samples_from_log(log: PairedLog):
    """View a paired log as the sample list the fitter consumes."""
    from .fitting import TorquePairSample
    from .geometry import LegState

    return [
        TorquePairSample(t=float(log.t[i]),
                         state=LegState.from_row(log.states[i]),
                         tau_land=tuple(log.tau_land[i]),
                         tau_water=tuple(log.tau_water[i]))
        for i in range(len(log.t))
    ]
