"""Selection of the torque-gain kernel: compiled extension or numpy.

The compiled kernel (``uwleg._gains_cy``, built from Cython) is used when
importable; otherwise the vectorised numpy fallback takes over. Set the
environment variable ``UWLEG_BACKEND=python`` (or ``compiled``) to pin a
choice, or pass ``force_backend`` per call. Both kernels implement the
same contract and agree to floating-point roundoff; they are compared in
the test suite and in ``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import os

import numpy as np

from . import _gains_py
from .geometry import EnvParams, LegGeometry
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec, gauss_rule

try:
    from . import _gains_cy
except ImportError:
    _gains_cy = None

HAS_COMPILED = _gains_cy is not None

STATE_COLUMNS = ("q1", "q2", "q3", "dq1", "dq2", "dq3", "ddq1", "ddq2", "ddq3")


def _env_choice() -> str | None:
    choice = os.environ.get("UWLEG_BACKEND", "").strip().lower()
    return choice or None


def active_backend() -> str:
    """Name of the kernel used by default: 'compiled' or 'python'."""
    choice = _env_choice()
    if choice == "python":
        return "python"
    if choice == "compiled":
        if not HAS_COMPILED:
            raise RuntimeError("UWLEG_BACKEND=compiled but the extension is not built")
        return "compiled"
    return "compiled" if HAS_COMPILED else "python"


def pack_params(geom: LegGeometry, env: EnvParams) -> np.ndarray:
    """Geometry and water constants in the layout both kernels expect."""
    params = np.empty(_gains_py.N_PARAMS)
    params[_gains_py.P_L2] = geom.L2
    params[_gains_py.P_L3] = geom.L3
    params[_gains_py.P_D21] = geom.D21
    params[_gains_py.P_D31] = geom.D31
    params[_gains_py.P_D22] = geom.D22
    params[_gains_py.P_D32] = geom.D32
    params[_gains_py.P_A2] = geom.A2
    params[_gains_py.P_A3] = geom.A3
    params[_gains_py.P_LC2] = geom.Lc2
    params[_gains_py.P_LC3] = geom.Lc3
    params[_gains_py.P_M2] = geom.m2
    params[_gains_py.P_M3] = geom.m3
    params[_gains_py.P_G] = geom.g
    params[_gains_py.P_RHO] = env.rho_water
    params[_gains_py.P_BUOY] = env.buoyancy_scale(geom)
    return params


def as_state_array(states) -> np.ndarray:
    """Validate and convert to the (n, 9) float64 layout the kernels use."""
    arr = np.ascontiguousarray(states, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != len(STATE_COLUMNS):
        raise ValueError(
            f"states must be (n, {len(STATE_COLUMNS)}) with columns "
            f"{STATE_COLUMNS}, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError("states contain non-finite values")
    return arr


def gains_batch(states, geom: LegGeometry, env: EnvParams,
                quad: QuadratureSpec = DEFAULT_QUADRATURE,
                force_backend: str | None = None
                ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dispatch a batch gain evaluation to the selected kernel."""
    arr = as_state_array(states)
    params = pack_params(geom, env)
    xi, wt = gauss_rule(quad.node_count)
    choice = force_backend or active_backend()
    if choice == "compiled":
        if not HAS_COMPILED:
            raise RuntimeError("compiled backend requested but not built")
        return _gains_cy.gains_batch(arr, params, np.ascontiguousarray(xi),
                                     np.ascontiguousarray(wt))
    if choice == "python":
        return _gains_py.gains_batch(arr, params, xi, wt)
    raise ValueError(f"unknown backend {choice!r}")
