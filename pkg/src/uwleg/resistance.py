"""Viscous and dynamic-seal resistance analysis of a watertight joint.

A joint filled with pressure-compensating oil pays a stirring penalty on
its high-speed rotor, and its output-shaft seal pays a friction penalty
that grows with ambient pressure. Neither is observable directly, but
both leave a signature in the motor current, which is proportional to the
resisting torque. Three test configurations separate them:

* ``dry``          no oil, no seal effect; current vs speed only
* ``oil_no_seal``  oil filled, seal removed; adds the viscous term
* ``oil_seal``     oil filled, seal installed; adds the seal term

Differencing oil_no_seal against dry (matched on speed) isolates the
viscous resistance current; differencing oil_seal against oil_no_seal
(matched on speed and pressure) isolates the seal resistance current.
Monotone bilinear surfaces over (speed, pressure) summarise each law, and
box-normalised sensitivities decide which axis dominates. Currents are
used throughout as the resistance proxy; no torque conversion is applied.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDesignError, GridError

CONFIGS = ("dry", "oil_no_seal", "oil_seal")

# Current differences smaller than this (A) are not monotonicity violations.
MONOTONICITY_TOL = 1e-9


@dataclass(frozen=True)
class ResistanceGrid:
    """Current samples over (speed, pressure) for one configuration.

    ``config`` names the measured configuration; derived grids carry
    ``kind`` ("viscous" or "seal") instead and may contain negative
    currents left over from measurement noise.
    """

    speed: np.ndarray
    pressure: np.ndarray
    current: np.ndarray
    config: str | None = None
    kind: str | None = None

    def __post_init__(self):
        for name in ("speed", "pressure", "current"):
            object.__setattr__(self, name,
                               np.asarray(getattr(self, name), dtype=float))
        if not (len(self.speed) == len(self.pressure) == len(self.current)):
            raise GridError("speed, pressure and current must have equal length")
        if len(self.speed) == 0:
            raise GridError("empty grid")
        if not np.all(np.isfinite(self.speed) & np.isfinite(self.pressure)
                      & np.isfinite(self.current)):
            raise GridError("grid contains non-finite values")
        if np.any(self.speed < 0) or np.any(self.pressure < 0):
            raise GridError("speeds and pressures must be non-negative")
        if self.kind is None and np.any(self.current < 0):
            raise GridError("measured currents must be non-negative")
        if self.config == "dry" and np.any(self.pressure != 0.0):
            raise GridError("dry-configuration rows must carry pressure 0")
        keys = list(zip(self.speed.tolist(), self.pressure.tolist()))
        if len(set(keys)) != len(keys):
            dupes = sorted({k for k in keys if keys.count(k) > 1})
            raise GridError(f"duplicate (speed, pressure) keys: {dupes}")

    def __len__(self) -> int:
        return len(self.speed)

    def key_set(self) -> set[tuple[float, float]]:
        return set(zip(self.speed.tolist(), self.pressure.tolist()))

    def box(self) -> tuple[float, float, float, float]:
        """(speed_min, speed_max, pressure_min, pressure_max)."""
        return (float(self.speed.min()), float(self.speed.max()),
                float(self.pressure.min()), float(self.pressure.max()))


def ingest_grid(rows) -> dict[str, ResistanceGrid]:
    """Group and validate (config, speed, pressure, current) rows.

    Returns one grid per configuration present. Raises
    :class:`GridError` on an empty table, unknown configuration names,
    negative values or duplicate keys within a configuration.
    """
    rows = list(rows)
    if not rows:
        raise GridError("empty grid table")
    grouped: dict[str, list[tuple[float, float, float]]] = {}
    for config, speed, pressure, current in rows:
        if config not in CONFIGS:
            raise GridError(f"unknown configuration {config!r}; "
                            f"expected one of {CONFIGS}")
        grouped.setdefault(config, []).append(
            (float(speed), float(pressure), float(current)))
    grids = {}
    for config, samples in grouped.items():
        arr = np.array(samples)
        grids[config] = ResistanceGrid(speed=arr[:, 0], pressure=arr[:, 1],
                                       current=arr[:, 2], config=config)
    return grids


def _warn_negative(kind: str, current: np.ndarray) -> None:
    negatives = int(np.sum(current < 0))
    if negatives:
        warnings.warn(
            f"{kind} resistance grid has {negatives} negative current "
            f"value(s); kept as-is (measurement noise stays visible)")


def viscous_current(oil_grid: ResistanceGrid,
                    dry_grid: ResistanceGrid) -> ResistanceGrid:
    """Viscous-resistance current: oil-filled (no seal) minus dry.

    The dry run is pressure independent, so matching is on speed only.
    Raises :class:`GridError` when an oil-grid speed has no dry
    measurement.
    """
    dry_by_speed = dict(zip(dry_grid.speed.tolist(), dry_grid.current.tolist()))
    missing = sorted(set(oil_grid.speed.tolist()) - set(dry_by_speed))
    if missing:
        raise GridError(f"no dry measurement for speed(s) {missing}")
    baseline = np.array([dry_by_speed[s] for s in oil_grid.speed.tolist()])
    current = oil_grid.current - baseline
    _warn_negative("viscous", current)
    return ResistanceGrid(speed=oil_grid.speed.copy(),
                          pressure=oil_grid.pressure.copy(),
                          current=current, kind="viscous")


def seal_current(seal_grid: ResistanceGrid,
                 oil_grid: ResistanceGrid) -> ResistanceGrid:
    """Seal-resistance current: with-seal minus no-seal at matched (n, p)."""
    oil_keys = list(zip(oil_grid.speed.tolist(), oil_grid.pressure.tolist()))
    oil_by_key = dict(zip(oil_keys, oil_grid.current.tolist()))
    missing = sorted(seal_grid.key_set() - set(oil_by_key))
    if missing:
        raise GridError(f"no oil_no_seal measurement for keys {missing}")
    keys = list(zip(seal_grid.speed.tolist(), seal_grid.pressure.tolist()))
    baseline = np.array([oil_by_key[k] for k in keys])
    current = seal_grid.current - baseline
    _warn_negative("seal", current)
    return ResistanceGrid(speed=seal_grid.speed.copy(),
                          pressure=seal_grid.pressure.copy(),
                          current=current, kind="seal")


@dataclass(frozen=True)
class ResistanceSurface:
    """Polynomial current surface I(n, p) fitted to a resistance grid.

    Basis: c00 + c10 n + c01 p + c11 n p, plus c20 n^2 + c02 p^2 when
    quadratic terms are requested. Valid over the bounding box of the
    fitted grid.
    """

    c00: float
    c10: float
    c01: float
    c11: float
    c20: float = 0.0
    c02: float = 0.0
    fit_cod: float = 1.0
    kind: str | None = None
    domain: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)

    def __call__(self, speed, pressure):
        n = np.asarray(speed, dtype=float)
        p = np.asarray(pressure, dtype=float)
        return (self.c00 + self.c10 * n + self.c01 * p + self.c11 * n * p
                + self.c20 * n * n + self.c02 * p * p)

    def d_speed(self, speed, pressure):
        """Partial derivative with respect to speed."""
        n = np.asarray(speed, dtype=float)
        p = np.asarray(pressure, dtype=float)
        return self.c10 + self.c11 * p + 2.0 * self.c20 * n

    def d_pressure(self, speed, pressure):
        """Partial derivative with respect to pressure."""
        n = np.asarray(speed, dtype=float)
        p = np.asarray(pressure, dtype=float)
        return self.c01 + self.c11 * n + 2.0 * self.c02 * p


def _design(grid: ResistanceGrid, quadratic: bool) -> np.ndarray:
    n, p = grid.speed, grid.pressure
    cols = [np.ones_like(n), n, p, n * p]
    if quadratic:
        cols += [n * n, p * p]
    return np.column_stack(cols)


def fit_surface(grid: ResistanceGrid,
                include_quadratic: bool = False) -> ResistanceSurface:
    """Least-squares resistance surface over (speed, pressure).

    Needs at least 4 samples (6 with quadratic terms) and a design of
    full rank. ``fit_cod`` is 1 for an exact fit, including the constant
    grid whose spread is zero.
    """
    needed = 6 if include_quadratic else 4
    if len(grid) < needed:
        raise GridError(
            f"surface fit needs at least {needed} samples, got {len(grid)}")
    design = _design(grid, include_quadratic)
    s = np.linalg.svd(design, compute_uv=False)
    if s[-1] <= 1e-10 * s[0]:
        raise DegenerateDesignError(
            "resistance grid does not span the surface basis "
            "(degenerate speed/pressure coverage)")
    coef, _, _, _ = np.linalg.lstsq(design, grid.current, rcond=None)
    yhat = design @ coef
    ss_res = float(np.sum((grid.current - yhat) ** 2))
    ss_tot = float(np.sum((grid.current - grid.current.mean()) ** 2))
    if ss_tot == 0.0:
        cod = 1.0 if ss_res <= 1e-20 else 0.0
    else:
        cod = 1.0 - ss_res / ss_tot
    full = np.zeros(6)
    full[:len(coef)] = coef
    return ResistanceSurface(c00=full[0], c10=full[1], c01=full[2],
                             c11=full[3], c20=full[4], c02=full[5],
                             fit_cod=cod, kind=grid.kind, domain=grid.box())


def adjusted_cod(cod: float, n_samples: int, n_params: int) -> float:
    """Adjusted coefficient of determination (overfit guard)."""
    dof = n_samples - n_params - 1
    if dof <= 0:
        return -math.inf
    return 1.0 - (1.0 - cod) * (n_samples - 1) / dof


def compare_surface_fits(grid: ResistanceGrid):
    """Fit bilinear and quadratic surfaces and report adjusted CODs.

    Returns (bilinear, quadratic, adj_cod_bilinear, adj_cod_quadratic).
    """
    bilinear = fit_surface(grid, include_quadratic=False)
    quadratic = fit_surface(grid, include_quadratic=True)
    return (bilinear, quadratic,
            adjusted_cod(bilinear.fit_cod, len(grid), 4),
            adjusted_cod(quadratic.fit_cod, len(grid), 6))


@dataclass(frozen=True)
class Violation:
    """One non-monotone step along an axis."""

    axis: str
    fixed: float
    start: float
    stop: float
    drop: float


@dataclass(frozen=True)
class MonotonicityReport:
    increasing_in_speed: bool
    increasing_in_pressure: bool
    violations: tuple[Violation, ...] = ()


def _axis_violations(keys: np.ndarray, other: np.ndarray, values: np.ndarray,
                     axis: str) -> list[Violation]:
    found = []
    for fixed in np.unique(other):
        mask = other == fixed
        order = np.argsort(keys[mask])
        k_sorted = keys[mask][order]
        v_sorted = values[mask][order]
        deltas = np.diff(v_sorted)
        for i in np.nonzero(deltas < -MONOTONICITY_TOL)[0]:
            found.append(Violation(axis=axis, fixed=float(fixed),
                                   start=float(k_sorted[i]),
                                   stop=float(k_sorted[i + 1]),
                                   drop=float(-deltas[i])))
    return found


def monotonicity_check(source, lattice: int = 21) -> MonotonicityReport:
    """Check that current increases along both speed and pressure.

    ``source`` is a grid or a fitted surface (sampled on a lattice over
    its domain). Requires at least two distinct values on each axis.
    """
    if isinstance(source, ResistanceSurface):
        n0, n1, p0, p1 = source.domain
        n_axis = np.linspace(n0, n1, lattice)
        p_axis = np.linspace(p0, p1, lattice)
        ngrid, pgrid = np.meshgrid(n_axis, p_axis, indexing="ij")
        speed = ngrid.ravel()
        pressure = pgrid.ravel()
        current = np.asarray(source(speed, pressure))
    else:
        speed, pressure, current = source.speed, source.pressure, source.current
    if len(np.unique(speed)) < 2 or len(np.unique(pressure)) < 2:
        raise GridError("monotonicity check needs at least 2 distinct speeds "
                        "and 2 distinct pressures")
    speed_viol = _axis_violations(speed, pressure, current, "speed")
    pressure_viol = _axis_violations(pressure, speed, current, "pressure")
    return MonotonicityReport(
        increasing_in_speed=not speed_viol,
        increasing_in_pressure=not pressure_viol,
        violations=tuple(speed_viol + pressure_viol))


@dataclass(frozen=True)
class SensitivityReport:
    """Box-normalised sensitivities of both resistance surfaces.

    ``s_speed`` and ``s_pressure`` are mean partial derivatives times the
    box extent along that axis, so the two numbers are directly
    comparable current changes across the domain.
    """

    box: tuple[float, float, float, float]
    viscous_s_speed: float
    viscous_s_pressure: float
    seal_s_speed: float
    seal_s_pressure: float
    viscous_dominant: str
    seal_dominant: str
    expected_ordering: bool


def _dominant(s_speed: float, s_pressure: float) -> str:
    if abs(s_speed) > abs(s_pressure):
        return "speed"
    if abs(s_pressure) > abs(s_speed):
        return "pressure"
    return "tie"


def sensitivity_report(surface_viscous: ResistanceSurface,
                       surface_seal: ResistanceSurface,
                       box: tuple[float, float, float, float] | None = None,
                       lattice: int = 21) -> SensitivityReport:
    """Which axis each resistance responds to more over a common box.

    ``expected_ordering`` is True when the viscous surface is
    speed-dominant and the seal surface pressure-dominant.
    """
    if box is None:
        nv0, nv1, pv0, pv1 = surface_viscous.domain
        ns0, ns1, ps0, ps1 = surface_seal.domain
        box = (max(nv0, ns0), min(nv1, ns1), max(pv0, ps0), min(pv1, ps1))
    n0, n1, p0, p1 = box
    if n1 <= n0 or p1 <= p0:
        raise GridError(f"surfaces have no common (speed, pressure) box: {box}")
    n_axis = np.linspace(n0, n1, lattice)
    p_axis = np.linspace(p0, p1, lattice)
    ngrid, pgrid = np.meshgrid(n_axis, p_axis, indexing="ij")

    def box_sensitivities(surface):
        s_n = float(np.mean(surface.d_speed(ngrid, pgrid))) * (n1 - n0)
        s_p = float(np.mean(surface.d_pressure(ngrid, pgrid))) * (p1 - p0)
        return s_n, s_p

    v_n, v_p = box_sensitivities(surface_viscous)
    s_n, s_p = box_sensitivities(surface_seal)
    viscous_dom = _dominant(v_n, v_p)
    seal_dom = _dominant(s_n, s_p)
    return SensitivityReport(
        box=box, viscous_s_speed=v_n, viscous_s_pressure=v_p,
        seal_s_speed=s_n, seal_s_pressure=s_p,
        viscous_dominant=viscous_dom, seal_dominant=seal_dom,
        expected_ordering=(viscous_dom == "speed" and seal_dom == "pressure"))


@dataclass(frozen=True)
class EfficiencyReport:
    """Share of rated current lost to viscous plus seal resistance."""

    total_loss_current: float
    rated_current: float
    loss_fraction: float
    efficiency: float
    within_rating: bool


def efficiency_report(total_loss_current: float,
                      rated_current: float) -> EfficiencyReport:
    """Joint efficiency implied by a total resistance-loss current.

    A loss above the rated current is reported (within_rating False)
    rather than rejected.
    """
    if rated_current <= 0:
        raise ValueError("rated_current must be strictly positive")
    if total_loss_current < 0:
        raise ValueError("total_loss_current must be non-negative")
    loss_fraction = total_loss_current / rated_current
    return EfficiencyReport(total_loss_current=total_loss_current,
                            rated_current=rated_current,
                            loss_fraction=loss_fraction,
                            efficiency=1.0 - loss_fraction,
                            within_rating=total_loss_current <= rated_current)


def demo_grids(inverted: bool = False,
               speeds=(0.0, 2.0, 4.0, 6.0, 8.0, 10.0),
               pressures=(0.0, 2.0, 4.0, 6.0, 8.0, 10.0)) -> dict[str, ResistanceGrid]:
    """Synthetic three-configuration grids for demos and pipeline tests.

    The default laws are monotone in both axes, speed-dominant for the
    viscous part and pressure-dominant for the seal part, and lose a
    total of 2.85 A at the (10 r/min, 10 MPa) corner. ``inverted=True``
    builds a counterexample that violates both monotonicity and the
    expected sensitivity ordering.
    """
    speeds = np.asarray(speeds, dtype=float)
    pressures = np.asarray(pressures, dtype=float)
    ngrid, pgrid = np.meshgrid(speeds, pressures, indexing="ij")
    n, p = ngrid.ravel(), pgrid.ravel()
    dry_current = 0.8 + 0.05 * speeds
    if inverted:
        viscous = 1.5 - 0.06 * n + 0.12 * p
        seal = 1.4 + 0.12 * n - 0.08 * p
    else:
        viscous = 0.10 * n + 0.01 * p + 0.004 * n * p
        seal = 0.005 * n + 0.12 * p + 0.001 * n * p
    dry_on_grid = 0.8 + 0.05 * n
    rows = []
    rows += [("dry", s, 0.0, c) for s, c in zip(speeds, dry_current)]
    rows += [("oil_no_seal", ni, pi, ci)
             for ni, pi, ci in zip(n, p, dry_on_grid + viscous)]
    rows += [("oil_seal", ni, pi, ci)
             for ni, pi, ci in zip(n, p, dry_on_grid + viscous + seal)]
    return ingest_grid(rows)
