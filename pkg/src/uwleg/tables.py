"""CSV interchange tables.

CSV is the single interchange format of the toolkit: headers mandatory,
UTF-8, '.' decimal separator, no locale dependence. Floats are written
with repr so files round-trip to the exact double and re-runs are
byte-identical.

Schemas
-------
trajectory      t,q1,q2,q3,dq1,dq2,dq3,ddq1,ddq2,ddq3
paired torques  trajectory columns + tau{1..3}_land,tau{1..3}_water
                (rate/acceleration columns may be omitted; they are then
                derived by central differences at the native timestep)
breakdown       t,joint,tau_w,tau_f,tau_d,tau_m,alpha_gain,beta_gain
resistance      config,speed_rpm,pressure_mpa,current_a
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .errors import TableFormatError
from .gait import PairedLog, Trajectory
from .resistance import ResistanceGrid, ingest_grid
from .torques import BreakdownTable

TRAJECTORY_COLUMNS = ("t", "q1", "q2", "q3", "dq1", "dq2", "dq3",
                      "ddq1", "ddq2", "ddq3")
TORQUE_COLUMNS = ("tau1_land", "tau2_land", "tau3_land",
                  "tau1_water", "tau2_water", "tau3_water")
BREAKDOWN_COLUMNS = ("t", "joint", "tau_w", "tau_f", "tau_d", "tau_m",
                     "alpha_gain", "beta_gain")
RESISTANCE_COLUMNS = ("config", "speed_rpm", "pressure_mpa", "current_a")


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _read_rows(path, required_columns) -> tuple[list[str], list[dict]]:
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TableFormatError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        missing = [c for c in required_columns if c not in header]
        if missing:
            raise TableFormatError(
                f"{path}: line 1: missing column(s) {missing}; header={header}")
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            if not raw or (len(raw) == 1 and not raw[0].strip()):
                continue
            if len(raw) != len(header):
                raise TableFormatError(
                    f"{path}: line {lineno}: expected {len(header)} fields, "
                    f"got {len(raw)}")
            rows.append({"_line": lineno, **dict(zip(header, raw))})
    return header, rows


def _parse_float(row: dict, column: str, path) -> float:
    try:
        value = float(row[column])
    except ValueError:
        raise TableFormatError(
            f"{path}: line {row['_line']}: column {column!r}: "
            f"not a number: {row[column]!r}") from None
    if not math.isfinite(value):
        raise TableFormatError(
            f"{path}: line {row['_line']}: column {column!r}: "
            f"non-finite value {row[column]!r}")
    return value


def _angle_scale(angle_unit: str) -> float:
    if angle_unit == "radians":
        return 1.0
    if angle_unit == "degrees":
        return math.pi / 180.0
    raise ValueError(f"angle_unit must be 'radians' or 'degrees', got {angle_unit!r}")


def write_trajectory_csv(path, traj: Trajectory) -> None:
    rows = ([_fmt(traj.t[i])] + [_fmt(v) for v in traj.states[i]]
            for i in range(len(traj)))
    _write_csv(path, TRAJECTORY_COLUMNS, rows)


def read_trajectory_csv(path, angle_unit: str = "radians") -> Trajectory:
    """Read a trajectory table; angle columns converted to radians."""
    scale = _angle_scale(angle_unit)
    _, rows = _read_rows(path, TRAJECTORY_COLUMNS)
    if not rows:
        raise TableFormatError(f"{path}: no data rows")
    t = np.array([_parse_float(r, "t", path) for r in rows])
    _check_increasing_t(t, path)
    data = np.array([[_parse_float(r, c, path) for c in TRAJECTORY_COLUMNS[1:]]
                     for r in rows]) * scale
    return Trajectory(t=t, q=data[:, 0:3], dq=data[:, 3:6], ddq=data[:, 6:9])


def _check_increasing_t(t: np.ndarray, path) -> None:
    if len(t) > 1 and np.any(np.diff(t) <= 0):
        raise TableFormatError(f"{path}: t column must be strictly increasing")


def _derive_rates(t: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Second-order central differences, one-sided at the ends.
    dq = np.gradient(q, t, axis=0, edge_order=2)
    ddq = np.gradient(dq, t, axis=0, edge_order=2)
    return dq, ddq


def write_paired_csv(path, log: PairedLog) -> None:
    header = TRAJECTORY_COLUMNS + TORQUE_COLUMNS
    rows = ([_fmt(log.t[i])] + [_fmt(v) for v in log.states[i]]
            + [_fmt(v) for v in log.tau_land[i]]
            + [_fmt(v) for v in log.tau_water[i]]
            for i in range(len(log.t)))
    _write_csv(path, header, rows)


def read_paired_csv(path, trajectory_path=None,
                    angle_unit: str = "radians") -> PairedLog:
    """Read a paired land/water torque log.

    The file must carry the torque columns plus either the trajectory
    columns inline or at least t,q1..q3 (rates then derived by central
    differences). Alternatively pass ``trajectory_path`` as a sidecar
    whose t column must match exactly.
    """
    scale = _angle_scale(angle_unit)
    header, rows = _read_rows(path, ("t",) + TORQUE_COLUMNS)
    if not rows:
        raise TableFormatError(f"{path}: no data rows")
    t = np.array([_parse_float(r, "t", path) for r in rows])
    _check_increasing_t(t, path)
    tau_land = np.array([[_parse_float(r, c, path) for c in TORQUE_COLUMNS[:3]]
                         for r in rows])
    tau_water = np.array([[_parse_float(r, c, path) for c in TORQUE_COLUMNS[3:]]
                          for r in rows])
    if trajectory_path is not None:
        traj = read_trajectory_csv(trajectory_path, angle_unit)
        if len(traj.t) != len(t) or not np.array_equal(traj.t, t):
            raise TableFormatError(
                f"{trajectory_path}: t column does not match {path}")
        states = traj.states
    elif all(c in header for c in TRAJECTORY_COLUMNS):
        states = np.array([[_parse_float(r, c, path)
                            for c in TRAJECTORY_COLUMNS[1:]]
                           for r in rows]) * scale
    elif all(c in header for c in ("q1", "q2", "q3")):
        q = np.array([[_parse_float(r, c, path) for c in ("q1", "q2", "q3")]
                      for r in rows]) * scale
        if len(q) < 3:
            raise TableFormatError(
                f"{path}: need at least 3 rows to derive rates from angles")
        dq, ddq = _derive_rates(t, q)
        states = np.column_stack([q, dq, ddq])
    else:
        raise TableFormatError(
            f"{path}: no joint-state columns; provide q1..ddq3 inline, "
            f"q1..q3 (rates are then derived), or a trajectory sidecar")
    return PairedLog(t=t, states=states, tau_land=tau_land, tau_water=tau_water)


def write_breakdown_csv(path, table: BreakdownTable) -> None:
    """One row per (sample, joint), joints in 1..3 order."""
    def rows():
        for i in range(len(table.t)):
            for j in range(3):
                yield [_fmt(table.t[i]), str(j + 1),
                       _fmt(table.tau_w[i, j]), _fmt(table.tau_f[i, j]),
                       _fmt(table.tau_d[i, j]), _fmt(table.tau_m[i, j]),
                       _fmt(table.alpha_gain[i, j]), _fmt(table.beta_gain[i, j])]
    _write_csv(path, BREAKDOWN_COLUMNS, rows())


def read_breakdown_csv(path) -> BreakdownTable:
    _, rows = _read_rows(path, BREAKDOWN_COLUMNS)
    if not rows:
        raise TableFormatError(f"{path}: no data rows")
    by_joint: dict[int, list] = {1: [], 2: [], 3: []}
    times: dict[float, None] = {}
    for r in rows:
        joint = r["joint"].strip()
        if joint not in ("1", "2", "3"):
            raise TableFormatError(
                f"{path}: line {r['_line']}: joint must be 1, 2 or 3, "
                f"got {joint!r}")
        values = [_parse_float(r, c, path) for c in BREAKDOWN_COLUMNS[2:]]
        t = _parse_float(r, "t", path)
        times[t] = None
        by_joint[int(joint)].append((t, values))
    counts = {j: len(v) for j, v in by_joint.items()}
    if len(set(counts.values())) != 1:
        raise TableFormatError(
            f"{path}: unbalanced joint rows per sample: {counts}")
    t = np.array(list(times))
    n = len(t)
    arrays = {name: np.empty((n, 3)) for name in BREAKDOWN_COLUMNS[2:]}
    t_index = {tv: i for i, tv in enumerate(times)}
    for j in (1, 2, 3):
        for tv, values in by_joint[j]:
            i = t_index[tv]
            for name, value in zip(BREAKDOWN_COLUMNS[2:], values):
                arrays[name][i, j - 1] = value
    return BreakdownTable(t=t, tau_w=arrays["tau_w"], tau_f=arrays["tau_f"],
                          tau_d=arrays["tau_d"], tau_m=arrays["tau_m"],
                          alpha_gain=arrays["alpha_gain"],
                          beta_gain=arrays["beta_gain"])


def write_resistance_csv(path, grids) -> None:
    """Write grids (mapping or iterable) in the resistance schema.

    Derived grids are written with their kind in the config column.
    """
    if isinstance(grids, dict):
        grids = grids.values()
    def rows():
        for grid in grids:
            label = grid.config or grid.kind or "unknown"
            for s, p, c in zip(grid.speed, grid.pressure, grid.current):
                yield [label, _fmt(s), _fmt(p), _fmt(c)]
    _write_csv(path, RESISTANCE_COLUMNS, rows())


def read_resistance_csv(path) -> dict[str, ResistanceGrid]:
    """Read and validate a three-configuration resistance table."""
    _, rows = _read_rows(path, RESISTANCE_COLUMNS)
    if not rows:
        raise TableFormatError(f"{path}: no data rows")
    parsed = []
    for r in rows:
        parsed.append((r["config"].strip(),
                       _parse_float(r, "speed_rpm", path),
                       _parse_float(r, "pressure_mpa", path),
                       _parse_float(r, "current_a", path)))
    return ingest_grid(parsed)
