"""Least-squares identification of the drag and added-mass coefficients.

The torque model is linear in (Cd, Cm): for every sample and joint,

    tau_f - tau_w = alpha * Cd + beta * Cm

where tau_w is the measured hydrodynamic torque (land minus underwater
joint torque) and (alpha, beta) are the model gains at that state.
Ordinary least squares over these rows is therefore the exact minimiser;
no iterative fitting is needed. By default only joint-1 rows are used:
gravity and buoyancy act parallel to the hip yaw axis and cannot
contaminate them, while joints 2 and 3 inherit any error in the gravity
and buoyancy bookkeeping.

States must carry rates and accelerations. Logs that provide only joint
angles get rates derived by central differences at the log's native
timestep (see tables.read_paired_csv); that differentiation noise feeds
directly into the added-mass rows, so analytic rates are preferred.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDesignError
from .geometry import EnvParams, LegGeometry, LegState
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec
from .torques import batch_gains

# Relative singular-value cutoff below which the design is rank deficient.
RANK_RTOL = 1e-10


@dataclass(frozen=True)
class TorquePairSample:
    """One time sample of the paired land / underwater torque logs."""

    t: float
    state: LegState
    tau_land: tuple[float, float, float]
    tau_water: tuple[float, float, float]


@dataclass(frozen=True)
class RegressionRows:
    """Stacked rows of the identification problem, one per (sample, joint)."""

    y: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    joint: np.ndarray


@dataclass(frozen=True)
class FitResult:
    """Estimates, uncertainty and goodness of fit of one identification run.

    Standard errors are absent (None) when fewer than 3 rows leave no
    residual degrees of freedom.
    """

    Cd_hat: float
    Cm_hat: float
    Cd_stderr: float | None
    Cm_stderr: float | None
    cod: float
    residual_rms: float
    sample_count: int


def hydro_torque_from_measurements(tau_land, tau_water) -> np.ndarray:
    """Measured hydrodynamic torque: land torque minus underwater torque.

    With buoyancy taken positive, a static buoyant pose needs less motor
    torque underwater, so the difference equals tau_f there.
    """
    tau_land = np.asarray(tau_land, dtype=float)
    tau_water = np.asarray(tau_water, dtype=float)
    if tau_land.shape != tau_water.shape:
        raise ValueError(
            f"torque shapes differ: {tau_land.shape} vs {tau_water.shape}")
    return tau_land - tau_water


def _check_rank2(design: np.ndarray) -> None:
    if design.shape[0] < 2:
        raise DegenerateDesignError(
            f"need at least 2 rows, got {design.shape[0]}")
    s = np.linalg.svd(design, compute_uv=False)
    if s[0] == 0.0 or s[1] <= RANK_RTOL * s[0]:
        raise DegenerateDesignError(
            "design matrix is rank deficient (all rows collinear or zero); "
            "the log needs motion that separates drag from added mass"
        )


def assemble_regression(samples, geom: LegGeometry, env: EnvParams,
                        quad: QuadratureSpec = DEFAULT_QUADRATURE,
                        joints: tuple[int, ...] = (1,)) -> RegressionRows:
    """Build regression rows y = alpha*Cd + beta*Cm from paired samples.

    One row per (sample, selected joint); y = tau_f - tau_w with tau_w the
    measured land/water difference. For joint 1 tau_f is identically zero.
    Raises :class:`DegenerateDesignError` when the rows cannot determine
    both coefficients (for example an all-static log).
    """
    samples = list(samples)
    if not samples:
        raise DegenerateDesignError("no samples")
    for j in joints:
        if j not in (1, 2, 3):
            raise ValueError(f"joint selection must be within 1..3, got {j}")
    states = np.array([
        (s.state.q1, s.state.q2, s.state.q3,
         s.state.dq1, s.state.dq2, s.state.dq3,
         s.state.ddq1, s.state.ddq2, s.state.ddq3)
        for s in samples
    ])
    alpha, beta, tau_f = batch_gains(states, geom, env, quad)
    tau_w = hydro_torque_from_measurements(
        np.array([s.tau_land for s in samples]),
        np.array([s.tau_water for s in samples]))
    y_rows, a_rows, b_rows, j_rows = [], [], [], []
    for j in joints:
        k = j - 1
        y_rows.append(tau_f[:, k] - tau_w[:, k])
        a_rows.append(alpha[:, k])
        b_rows.append(beta[:, k])
        j_rows.append(np.full(len(samples), j))
    rows = RegressionRows(y=np.concatenate(y_rows),
                          alpha=np.concatenate(a_rows),
                          beta=np.concatenate(b_rows),
                          joint=np.concatenate(j_rows))
    _check_rank2(np.column_stack([rows.alpha, rows.beta]))
    return rows


def fit_hydro_params(rows: RegressionRows) -> FitResult:
    """Ordinary least squares for (Cd, Cm) with stderr and goodness of fit."""
    design = np.column_stack([rows.alpha, rows.beta])
    _check_rank2(design)
    y = rows.y
    n = len(y)
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    yhat = design @ coef
    ss_res = float(np.sum((y - yhat) ** 2))
    cod = coefficient_of_determination(y, yhat)
    if n >= 3:
        sigma2 = ss_res / (n - 2)
        cov = sigma2 * np.linalg.inv(design.T @ design)
        cd_err = math.sqrt(max(cov[0, 0], 0.0))
        cm_err = math.sqrt(max(cov[1, 1], 0.0))
    else:
        cd_err = cm_err = None
    return FitResult(Cd_hat=float(coef[0]), Cm_hat=float(coef[1]),
                     Cd_stderr=cd_err, Cm_stderr=cm_err, cod=cod,
                     residual_rms=math.sqrt(ss_res / n), sample_count=n)


def coefficient_of_determination(y, yhat) -> float:
    """1 - SS_res / SS_tot. Undefined (raises) for constant y."""
    y = np.asarray(y, dtype=float)
    yhat = np.asarray(yhat, dtype=float)
    if y.shape != yhat.shape or y.ndim != 1:
        raise ValueError("y and yhat must be 1-D arrays of equal length")
    if len(y) < 2:
        raise ValueError("need at least 2 values")
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        raise ValueError("coefficient of determination undefined for constant y")
    ss_res = float(np.sum((y - yhat) ** 2))
    return 1.0 - ss_res / ss_tot
