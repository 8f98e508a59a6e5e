"""Slice kinematics and foot kinematics of the 3-DOF leg.

Frame convention: the hip yaw axis is vertical (parallel to buoyancy) and
the yaw angle q1 selects the vertical plane the thigh and calf move in.
Within that plane, measured from the horizontal,

* the thigh (link 2) points along ``(cos q2, sin q2)`` in (radial, up)
  coordinates, and
* the calf (link 3) points along ``(sin(q2+q3), -cos(q2+q3))``,

so q3 = pi/2 stretches the calf collinear with the thigh and q3 = 0 folds
it perpendicular, foot down. This zero-pose choice reproduces the slice
normal velocities and moment arms used by the torque model.

For a slice at distance ``x`` along a link, ``normal_velocity(j, i, ...)``
is the velocity component normal to link ``i`` induced by joint ``j``.
Only six (joint, link) pairs are geometrically meaningful:
(1,1), (1,2), (1,3), (2,2), (2,3), (3,3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ReachabilityError
from .geometry import LegGeometry, LegState

SUPPORTED_PAIRS = ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3))


@dataclass(frozen=True)
class SliceKinematics:
    """Normal velocity, normal acceleration and moment arm of one slice.

    ``arm`` is the lever converting the slice force into torque about the
    driving joint; it equals the partial derivative of the slice velocity
    with respect to that joint's rate (power-consistent convention).
    """

    v: float
    vdot: float
    arm: float


def _check_pair(joint_axis: int, link: int) -> None:
    if (joint_axis, link) not in SUPPORTED_PAIRS:
        raise DomainError(
            f"unsupported (joint_axis, link) pair ({joint_axis}, {link}); "
            f"supported pairs: {SUPPORTED_PAIRS}"
        )


def _check_x(x, length: float, what: str):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(x > length):
        raise DomainError(f"{what}: x must lie in [0, {length}], got {x}")
    return x


def slice_radius(x, q3: float, geom: LegGeometry):
    """Distance from the hip joint centre to a calf slice at arc length x.

    Law of cosines across the knee: sqrt(L2^2 + x^2 + 2 L2 x sin(q3)).
    Equals L2 at x = 0 and L2 + x when the calf is stretched (q3 = pi/2).
    """
    x = _check_x(x, geom.L3, "slice_radius")
    r = np.sqrt(geom.L2**2 + x**2 + 2.0 * geom.L2 * x * math.sin(q3))
    return float(r) if np.isscalar(x) or x.ndim == 0 else r

def cos_slice_angle(x, q3: float, geom: LegGeometry):
    """Cosine of the angle between the hip-to-slice radius and the calf axis.

    Law of cosines in the hip / knee / slice triangle,
    (x^2 + r^2 - L2^2) / (2 x r), reduced to the cancellation-free form
    (x + L2 sin q3) / r. Undefined at x = 0, where the triangle collapses;
    the x = 0 slice carries no torque, so callers never need the limit.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("cos_slice_angle: undefined at x = 0 (degenerate triangle)")
    r = slice_radius(x, q3, geom)
    if np.any(np.asarray(r) == 0.0):
        raise DomainError("cos_slice_angle: slice coincides with the hip joint centre")
    c = np.clip((x + geom.L2 * math.sin(q3)) / r, -1.0, 1.0)
    return float(c) if x.ndim == 0 else c


def normal_velocity(joint_axis: int, link: int, x, state: LegState,
                    geom: LegGeometry):
    """Normal velocity of the slice at arc length x, induced by one joint.

    Accepts scalar or ndarray ``x``. The (1, 1) pair is identically zero
    for any x: the hub radius of link 1 is treated as zero, which also
    collapses the range check for that degenerate link.
    """
    _check_pair(joint_axis, link)
    if (joint_axis, link) == (1, 1):
        x = np.asarray(x, dtype=float)
        return 0.0 if x.ndim == 0 else np.zeros_like(x)
    x = _check_x(x, geom.link_length(link), "normal_velocity")
    if (joint_axis, link) == (1, 2):
        v = state.dq1 * x * math.cos(state.q2)
    elif (joint_axis, link) == (1, 3):
        v = state.dq1 * (geom.L2 * math.cos(state.q2)
                         + x * math.sin(state.q2 + state.q3))
    elif (joint_axis, link) == (2, 2):
        v = state.dq2 * x
    elif (joint_axis, link) == (2, 3):
        v = state.dq2 * slice_radius(x, state.q3, geom)
    else:  # (3, 3)
        v = state.dq3 * x
    return float(v) if x.ndim == 0 else np.asarray(v)


def normal_acceleration(joint_axis: int, link: int, x, state: LegState,
                        geom: LegGeometry):
    """Time derivative of :func:`normal_velocity` along the joint motion.

    Exact chain rule through (q, dq, ddq); no finite differencing.
    """
    _check_pair(joint_axis, link)
    if (joint_axis, link) == (1, 1):
        x = np.asarray(x, dtype=float)
        return 0.0 if x.ndim == 0 else np.zeros_like(x)
    x = _check_x(x, geom.link_length(link), "normal_acceleration")
    q2, q3 = state.q2, state.q3
    c2, s2 = math.cos(q2), math.sin(q2)
    c23, s23 = math.cos(q2 + q3), math.sin(q2 + q3)
    if (joint_axis, link) == (1, 2):
        a = state.ddq1 * x * c2 - state.dq1 * state.dq2 * x * s2
    elif (joint_axis, link) == (1, 3):
        a = (state.ddq1 * (geom.L2 * c2 + x * s23)
             + state.dq1 * (-geom.L2 * s2 * state.dq2
                            + x * c23 * (state.dq2 + state.dq3)))
    elif (joint_axis, link) == (2, 2):
        a = state.ddq2 * x
    elif (joint_axis, link) == (2, 3):
        r = np.asarray(slice_radius(x, q3, geom))
        if np.any(r == 0.0):
            raise DomainError(
                "normal_acceleration: radius derivative undefined where the "
                "slice coincides with the hip joint centre"
            )
        a = state.ddq2 * r + state.dq2 * state.dq3 * geom.L2 * x * math.cos(q3) / r
    else:  # (3, 3)
        a = state.ddq3 * x
    return float(a) if x.ndim == 0 else np.asarray(a)


def slice_kinematics(joint_axis: int, link: int, x: float, state: LegState,
                     geom: LegGeometry) -> SliceKinematics:
    """Velocity, acceleration and moment arm of one slice."""
    v = normal_velocity(joint_axis, link, x, state, geom)
    vdot = normal_acceleration(joint_axis, link, x, state, geom)
    if (joint_axis, link) == (1, 1):
        arm = 0.0
    elif (joint_axis, link) == (1, 2):
        arm = x * math.cos(state.q2)
    elif (joint_axis, link) == (1, 3):
        arm = geom.L2 * math.cos(state.q2) + x * math.sin(state.q2 + state.q3)
    elif (joint_axis, link) == (2, 3):
        arm = slice_radius(x, state.q3, geom)
    else:  # (2, 2) and (3, 3)
        arm = float(x)
    return SliceKinematics(v=float(v), vdot=float(vdot), arm=float(arm))


def fk_foot(q, geom: LegGeometry) -> np.ndarray:
    """Foot position in the base frame for joint angles ``q = (q1, q2, q3)``.

    The base origin sits at the intersection of the hip yaw and roll axes;
    z points up along the yaw axis.
    """
    q1, q2, q3 = (float(v) for v in q)
    radial = geom.L2 * math.cos(q2) + geom.L3 * math.sin(q2 + q3)
    height = geom.L2 * math.sin(q2) - geom.L3 * math.cos(q2 + q3)
    return np.array([radial * math.cos(q1), radial * math.sin(q1), height])


def ik_leg(p_foot, geom: LegGeometry,
           branch: str = "knee_up") -> tuple[float, float, float]:
    """Joint angles that place the foot at ``p_foot``.

    ``branch`` selects the knee solution: "knee_up" bends the knee above
    the hip-to-foot chord (the stance-like pose), "knee_down" below. At
    workspace boundaries both branches coincide. Raises
    :class:`ReachabilityError` outside the annulus
    |L2 - L3| <= distance <= L2 + L3.
    """
    if branch not in ("knee_up", "knee_down"):
        raise ValueError(f"branch must be 'knee_up' or 'knee_down', got {branch!r}")
    px, py, pz = (float(v) for v in p_foot)
    radial = math.hypot(px, py)
    dist = math.hypot(radial, pz)
    inner, outer = abs(geom.L2 - geom.L3), geom.L2 + geom.L3
    tol = 1e-9 * outer
    if dist > outer + tol:
        raise ReachabilityError(dist, outer)
    if dist < inner - tol:
        raise ReachabilityError(dist, inner)
    q1 = math.atan2(py, px) if radial > 0.0 else 0.0
    cos_knee = (dist**2 - geom.L2**2 - geom.L3**2) / (2.0 * geom.L2 * geom.L3)
    knee = math.acos(min(1.0, max(-1.0, cos_knee)))
    if branch == "knee_up":
        knee = -knee
    q2 = (math.atan2(pz, radial)
          - math.atan2(geom.L3 * math.sin(knee), geom.L2 + geom.L3 * math.cos(knee)))
    q3 = knee + 0.5 * math.pi
    return (q1, q2, q3)
