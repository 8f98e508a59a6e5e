import numpy as np
import pytest

from uwleg import (EnvParams, HydroCoeffs, LegGeometry, LegState,
                   QuadratureSpec)


@pytest.fixture
def geom():
    return LegGeometry()


@pytest.fixture
def env():
    return EnvParams()


@pytest.fixture
def coeffs():
    return HydroCoeffs(Cd=2.2, Cm=0.5)


@pytest.fixture
def quad():
    return QuadratureSpec(32)


def random_states(rng, n):
    """Random joint states over the operational envelope.

    q3 stays above -pi/4: folding the calf flat against the thigh
    (q3 near -pi/2) is self-colliding and puts calf slices on top of the
    hip joint centre.
    """
    return np.column_stack([
        rng.uniform(-np.pi, np.pi, n),
        rng.uniform(-np.pi / 2, np.pi / 2, n),
        rng.uniform(-np.pi / 4, np.pi, n),
        rng.uniform(-1.0, 1.0, (n, 3)),
        rng.uniform(-2.0, 2.0, (n, 3)),
    ])


def random_state(rng):
    return LegState.from_row(random_states(rng, 1)[0])
