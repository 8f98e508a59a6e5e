# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled torque-gain kernel.

Scalar twin of :mod:`uwleg._gains_py`: same parameter packing, same
quadrature mapping, same term order, evaluated in tight C loops.
"""

import numpy as np

from libc.math cimport cos, fabs, sin, sqrt

# Parameter packing shared with the fallback; see backend.pack_params.
cdef enum:
    P_L2, P_L3, P_D21, P_D31, P_D22, P_D32, P_A2, P_A3
    P_LC2, P_LC3, P_M2, P_M3, P_G, P_RHO, P_BUOY


def gains_batch(const double[:, ::1] states, const double[::1] params, const double[::1] xi,
                const double[::1] wt):
    """Per-sample drag gains, added-mass gains and buoyancy torques.

    ``states``: (n, 9) rows (q1, q2, q3, dq1, dq2, dq3, ddq1, ddq2, ddq3).
    Returns (alpha, beta, tau_f), each (n, 3).
    """
    cdef Py_ssize_t n = states.shape[0]
    cdef Py_ssize_t m = xi.shape[0]
    alpha_arr = np.empty((n, 3))
    beta_arr = np.empty((n, 3))
    tauf_arr = np.empty((n, 3))
    cdef double[:, ::1] alpha = alpha_arr
    cdef double[:, ::1] beta = beta_arr
    cdef double[:, ::1] tauf = tauf_arr

    cdef double L2 = params[P_L2]
    cdef double L3 = params[P_L3]
    cdef double D21 = params[P_D21], D31 = params[P_D31]
    cdef double D22 = params[P_D22], D32 = params[P_D32]
    cdef double A2 = params[P_A2], A3 = params[P_A3]
    cdef double Lc2 = params[P_LC2], Lc3 = params[P_LC3]
    cdef double m2 = params[P_M2], m3 = params[P_M3]
    cdef double g = params[P_G], rho = params[P_RHO], buoy = params[P_BUOY]

    cdef Py_ssize_t i, k
    cdef double q2, q3, dq1, dq2, dq3, ddq1, ddq2, ddq3
    cdef double c2, s2, c23, s23, c3, s3
    cdef double x, w, arm21, arm31, r31, cosa
    cdef double v21, vd21, v22, vd22, v31, vd31, v32, vd32, v33, vd33
    cdef double a1, b1, a2, b2, a3, b3

    with nogil:
        for i in range(n):
            q2 = states[i, 1]
            q3 = states[i, 2]
            dq1 = states[i, 3]
            dq2 = states[i, 4]
            dq3 = states[i, 5]
            ddq1 = states[i, 6]
            ddq2 = states[i, 7]
            ddq3 = states[i, 8]
            c2 = cos(q2)
            s2 = sin(q2)
            c23 = cos(q2 + q3)
            s23 = sin(q2 + q3)
            c3 = cos(q3)
            s3 = sin(q3)

            a1 = b1 = a2 = b2 = a3 = b3 = 0.0

            # Thigh slices.
            for k in range(m):
                x = 0.5 * L2 * (xi[k] + 1.0)
                w = 0.5 * L2 * wt[k]
                arm21 = x * c2
                v21 = dq1 * arm21
                vd21 = ddq1 * arm21 - dq1 * dq2 * x * s2
                v22 = dq2 * x
                vd22 = ddq2 * x
                a1 += w * D21 * arm21 * v21 * fabs(v21)
                b1 += w * A2 * arm21 * vd21
                a2 += w * D22 * x * v22 * fabs(v22)
                b2 += w * A2 * x * vd22

            # Calf slices.
            for k in range(m):
                x = 0.5 * L3 * (xi[k] + 1.0)
                w = 0.5 * L3 * wt[k]
                arm31 = L2 * c2 + x * s23
                v31 = dq1 * arm31
                vd31 = ddq1 * arm31 + dq1 * (-L2 * s2 * dq2 + x * c23 * (dq2 + dq3))
                r31 = sqrt(L2 * L2 + x * x + 2.0 * L2 * x * s3)
                if r31 > 0.0:
                    cosa = (x + L2 * s3) / r31
                    vd32 = ddq2 * r31 + dq2 * dq3 * L2 * x * c3 / r31
                else:
                    cosa = 0.0
                    vd32 = 0.0
                v32 = dq2 * r31
                v33 = dq3 * x
                vd33 = ddq3 * x
                a1 += w * D31 * arm31 * v31 * fabs(v31)
                b1 += w * A3 * arm31 * vd31
                a2 += w * D32 * (r31 * v32 * fabs(v32)
                                 + r31 * cosa * v33 * fabs(v33))
                b2 += w * A3 * (r31 * vd32 + r31 * cosa * vd32)
                a3 += w * D32 * (x * v33 * fabs(v33)
                                 + x * cosa * v32 * fabs(v32))
                b3 += w * A3 * (x * vd33 + x * cosa * vd32)

            alpha[i, 0] = 0.5 * rho * a1
            alpha[i, 1] = 0.5 * rho * a2
            alpha[i, 2] = 0.5 * rho * a3
            beta[i, 0] = rho * b1
            beta[i, 1] = rho * b2
            beta[i, 2] = rho * b3
            tauf[i, 0] = 0.0
            tauf[i, 1] = buoy * (m2 * g * Lc2 * c2 + m3 * g * (L2 * c2 + Lc3 * s23))
            tauf[i, 2] = buoy * m3 * g * Lc3 * s23

    return alpha_arr, beta_arr, tauf_arr
