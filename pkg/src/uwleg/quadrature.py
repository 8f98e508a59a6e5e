"""Fixed-node Gauss-Legendre quadrature for the slice-torque integrals.

A fixed rule (rather than an adaptive one) keeps the drag and added-mass
gains bit-for-bit reproducible across runs, which the least-squares
identification relies on. The integrands are smooth on each link, so a
32-node rule is far inside its convergence plateau.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class QuadratureSpec:
    """Node count of the fixed Gauss-Legendre rule on each link."""

    node_count: int = 32

    def __post_init__(self):
        if self.node_count < 2:
            raise ValueError(f"node_count must be >= 2, got {self.node_count}")


DEFAULT_QUADRATURE = QuadratureSpec()


@lru_cache(maxsize=None)
def gauss_rule(node_count: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the Gauss-Legendre rule on [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(node_count)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def mapped_rule(lower: float, upper: float,
                quad: QuadratureSpec = DEFAULT_QUADRATURE) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights mapped affinely onto [lower, upper]."""
    nodes, weights = gauss_rule(quad.node_count)
    half = 0.5 * (upper - lower)
    return lower + half * (nodes + 1.0), half * weights


def integrate(f, lower: float, upper: float,
              quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Gauss-Legendre estimate of the integral of ``f`` over [lower, upper].

    ``f`` must accept an ndarray of sample points. Exact for polynomials
    of degree <= 2 * node_count - 1. Non-finite integrand values propagate
    into the result rather than being masked.
    """
    if upper < lower:
        raise DomainError(f"empty interval: lower={lower} > upper={upper}")
    if upper == lower:
        return 0.0
    x, w = mapped_rule(lower, upper, quad)
    try:
        values = np.asarray(f(x), dtype=float)
        if values.shape != x.shape:
            raise TypeError
    except (TypeError, ValueError):
        values = np.array([float(f(xi)) for xi in x])
    return float(w @ values)
