"""Leg geometry, water properties and joint-state containers.

The leg is a 3-DOF serial chain: a hip yaw joint whose axis is vertical,
followed by a hip roll joint and a knee roll joint moving the thigh
(link 2) and calf (link 3) in the vertical plane selected by the yaw
angle. Links are modeled as slender rectangular prisms.

Units: lengths in m, masses in kg, densities in kg/m^3, angles in rad,
rates in rad/s, accelerations in rad/s^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path

import yaml

DEFAULT_PROFILE = "uwml-default"


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class LegGeometry:
    """Kinematic and inertial parameters of one leg.

    L1..L3       link lengths (the hip yaw and roll axes intersect, so L1=0)
    Lc1..Lc3     centroid distance of each link from its parent joint axis
    Di1, Di2     effective cross-section height / width of link i
    m1..m3       link masses
    rho_link     equivalent (homogenised) link density
    g            gravitational acceleration
    """

    L1: float = 0.0
    L2: float = 0.660
    L3: float = 0.714
    Lc1: float = 0.0
    Lc2: float = 0.506
    Lc3: float = 0.560
    D11: float = 0.0
    D12: float = 0.0
    D21: float = 0.131
    D22: float = 0.238
    D31: float = 0.131
    D32: float = 0.279
    m1: float = 10.758
    m2: float = 19.261
    m3: float = 10.375
    rho_link: float = 2700.0
    g: float = 9.81

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            _require_finite(f.name, value)
            if value < 0:
                raise ValueError(f"{f.name} must be non-negative, got {value}")
        for name in ("L2", "L3", "rho_link"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.Lc2 > self.L2:
            raise ValueError("Lc2 must not exceed L2")
        if self.Lc3 > self.L3:
            raise ValueError("Lc3 must not exceed L3")

    @property
    def A1(self) -> float:
        """Effective cross-section area of link 1."""
        return self.D11 * self.D12

    @property
    def A2(self) -> float:
        """Effective cross-section area of link 2."""
        return self.D21 * self.D22

    @property
    def A3(self) -> float:
        """Effective cross-section area of link 3."""
        return self.D31 * self.D32

    def link_length(self, link: int) -> float:
        return {1: self.L1, 2: self.L2, 3: self.L3}[link]


@dataclass(frozen=True)
class EnvParams:
    """Properties of the surrounding water."""

    rho_water: float = 1000.0

    def __post_init__(self):
        _require_finite("rho_water", self.rho_water)
        if self.rho_water <= 0:
            raise ValueError("rho_water must be strictly positive")

    def buoyancy_scale(self, geom: LegGeometry) -> float:
        """Ratio of water density to link density.

        Scales a gravity torque into the corresponding buoyancy torque for
        links whose centroid and buoyancy centre coincide.
        """
        return self.rho_water / geom.rho_link


@dataclass(frozen=True)
class LegState:
    """Joint angles, rates and accelerations at one time instant."""

    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0
    dq1: float = 0.0
    dq2: float = 0.0
    dq3: float = 0.0
    ddq1: float = 0.0
    ddq2: float = 0.0
    ddq3: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            _require_finite(f.name, getattr(self, f.name))

    @property
    def q(self) -> tuple[float, float, float]:
        return (self.q1, self.q2, self.q3)

    @property
    def dq(self) -> tuple[float, float, float]:
        return (self.dq1, self.dq2, self.dq3)

    @property
    def ddq(self) -> tuple[float, float, float]:
        return (self.ddq1, self.ddq2, self.ddq3)

    @classmethod
    def from_row(cls, row) -> "LegState":
        """Build a state from a 9-element sequence (q, dq, ddq)."""
        q1, q2, q3, dq1, dq2, dq3, ddq1, ddq2, ddq3 = (float(v) for v in row)
        return cls(q1, q2, q3, dq1, dq2, dq3, ddq1, ddq2, ddq3)


def load_profile(source: str | Path) -> tuple[LegGeometry, EnvParams, str]:
    """Load geometry and water parameters from a YAML profile.

    ``source`` is either the name of a bundled profile (``uwml-default``)
    or a filesystem path. Returns ``(geometry, environment, angle_unit)``
    where ``angle_unit`` ("radians" or "degrees") declares the unit used
    by trajectory tables ingested under this profile.
    """
    path = Path(source)
    if path.suffix in (".yaml", ".yml") or path.exists():
        text = path.read_text(encoding="utf-8")
    else:
        ref = resources.files("uwleg").joinpath(f"profiles/{source}.yaml")
        if not ref.is_file():
            raise FileNotFoundError(f"no bundled profile or file named {source!r}")
        text = ref.read_text(encoding="utf-8")
    doc = yaml.safe_load(text)
    if not isinstance(doc, dict):
        raise ValueError(f"profile {source!r} is not a key-value document")
    geom = LegGeometry(**doc.get("geometry", {}))
    env = EnvParams(**doc.get("environment", {}))
    angle_unit = str(doc.get("angles", "radians"))
    if angle_unit not in ("radians", "degrees"):
        raise ValueError(f"angles must be 'radians' or 'degrees', got {angle_unit!r}")
    return geom, env, angle_unit


def save_profile(path: str | Path, geom: LegGeometry, env: EnvParams,
                 angle_unit: str = "radians") -> None:
    """Write a geometry profile readable by :func:`load_profile`."""
    doc = {
        "geometry": {f.name: getattr(geom, f.name) for f in fields(geom)},
        "environment": {"rho_water": env.rho_water},
        "angles": angle_unit,
    }
    Path(path).write_text(yaml.safe_dump(doc, sort_keys=False), encoding="utf-8")
