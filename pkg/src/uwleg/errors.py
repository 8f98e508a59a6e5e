"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """Input outside the domain an operation is defined on."""


class ReachabilityError(ValueError):
    """Foot target outside the reachable workspace.

    Carries the offending distance and the closest reachable distance so
    callers can report how far out of range the target is.
    """

    def __init__(self, distance: float, closest: float):
        super().__init__(
            f"target at distance {distance:.6f} m from the hip is unreachable; "
            f"closest reachable distance is {closest:.6f} m"
        )
        self.distance = distance
        self.closest = closest


class DegenerateDesignError(ValueError):
    """Regression design matrix has no unique least-squares solution."""


class GridError(ValueError):
    """Malformed or inconsistent resistance-test grid."""


class TableFormatError(ValueError):
    """Malformed tabular input; the message carries the offending line."""
