"""Vectorised numpy implementation of the torque-gain kernel.

Fallback for :mod:`uwleg.backend` when the compiled extension is not
available. Must stay numerically identical to ``_gains_cy``: same
parameter packing, same quadrature mapping, same term order.
"""

from __future__ import annotations

import numpy as np

# Parameter packing shared with the compiled kernel; see backend.pack_params.
P_L2, P_L3, P_D21, P_D31, P_D22, P_D32, P_A2, P_A3 = range(8)
P_LC2, P_LC3, P_M2, P_M3, P_G, P_RHO, P_BUOY = range(8, 15)
N_PARAMS = 15


def gains_batch(states: np.ndarray, params: np.ndarray, xi: np.ndarray,
                wt: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-sample drag gains, added-mass gains and buoyancy torques.

    ``states``: (n, 9) rows (q1, q2, q3, dq1, dq2, dq3, ddq1, ddq2, ddq3).
    ``xi``, ``wt``: Gauss-Legendre nodes and weights on [-1, 1].
    Returns (alpha, beta, tau_f), each (n, 3).
    """
    L2, L3 = params[P_L2], params[P_L3]
    rho = params[P_RHO]

    q2 = states[:, 1:2]
    q3 = states[:, 2:3]
    dq1, dq2, dq3 = states[:, 3:4], states[:, 4:5], states[:, 5:6]
    ddq1, ddq2, ddq3 = states[:, 6:7], states[:, 7:8], states[:, 8:9]

    c2, s2 = np.cos(q2), np.sin(q2)
    c23, s23 = np.cos(q2 + q3), np.sin(q2 + q3)
    c3, s3 = np.cos(q3), np.sin(q3)

    # Quadrature nodes mapped onto each link, shape (nodes,).
    x2 = 0.5 * L2 * (xi + 1.0)
    w2 = 0.5 * L2 * wt
    x3 = 0.5 * L3 * (xi + 1.0)
    w3 = 0.5 * L3 * wt

    # Thigh slices, shape (n, nodes).
    arm21 = x2 * c2
    v21 = dq1 * arm21
    vd21 = ddq1 * arm21 - dq1 * dq2 * x2 * s2
    v22 = dq2 * x2
    vd22 = ddq2 * x2

    # Calf slices.
    arm31 = L2 * c2 + x3 * s23
    v31 = dq1 * arm31
    vd31 = ddq1 * arm31 + dq1 * (-L2 * s2 * dq2 + x3 * c23 * (dq2 + dq3))
    r31 = np.sqrt(L2 * L2 + x3 * x3 + 2.0 * L2 * x3 * s3)
    with np.errstate(divide="ignore", invalid="ignore"):
        cosa = np.where(r31 > 0.0, (x3 + L2 * s3) / r31, 0.0)
        chain32 = np.where(r31 > 0.0, dq2 * dq3 * L2 * x3 * c3 / r31, 0.0)
    v32 = dq2 * r31
    vd32 = ddq2 * r31 + chain32
    v33 = dq3 * x3
    vd33 = ddq3 * x3

    def quad2(f):
        return f @ w2

    def quad3(f):
        return f @ w3

    alpha = np.empty((states.shape[0], 3))
    beta = np.empty((states.shape[0], 3))

    alpha[:, 0] = 0.5 * rho * (
        params[P_D21] * quad2(arm21 * v21 * np.abs(v21))
        + params[P_D31] * quad3(arm31 * v31 * np.abs(v31)))
    beta[:, 0] = rho * (
        params[P_A2] * quad2(arm21 * vd21)
        + params[P_A3] * quad3(arm31 * vd31))

    alpha[:, 1] = 0.5 * rho * (
        params[P_D22] * quad2(x2 * v22 * np.abs(v22))
        + params[P_D32] * quad3(r31 * v32 * np.abs(v32))
        + params[P_D32] * quad3(r31 * cosa * v33 * np.abs(v33)))
    beta[:, 1] = rho * (
        params[P_A2] * quad2(x2 * vd22)
        + params[P_A3] * quad3(r31 * vd32)
        + params[P_A3] * quad3(r31 * cosa * vd32))

    alpha[:, 2] = 0.5 * rho * params[P_D32] * (
        quad3(x3 * v33 * np.abs(v33))
        + quad3(x3 * cosa * v32 * np.abs(v32)))
    beta[:, 2] = rho * params[P_A3] * (
        quad3(x3 * vd33)
        + quad3(x3 * cosa * vd32))

    tau_f = np.empty((states.shape[0], 3))
    buoy = params[P_BUOY]
    g = params[P_G]
    tau_f[:, 0] = 0.0
    tau_f[:, 1] = buoy * (
        params[P_M2] * g * params[P_LC2] * c2[:, 0]
        + params[P_M3] * g * (L2 * c2[:, 0] + params[P_LC3] * s23[:, 0]))
    tau_f[:, 2] = buoy * params[P_M3] * g * params[P_LC3] * s23[:, 0]

    return alpha, beta, tau_f
