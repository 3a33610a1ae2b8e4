"""Exception types shared across the package."""


class InvalidCurveError(ValueError):
    """A lattice vector used as a curve is zero or not primitive."""


class InconsistentSystemError(ValueError):
    """A linear or congruence system has no integer solution."""


class DegenerateFamilyError(ValueError):
    """Family parameters hit an excluded case (for example b = eps*a)."""


class NonClosingMonodromyError(ValueError):
    """The monodromy does not send lambda to +-lambda."""

    def __init__(self, pairing: int):
        super().__init__(f"monodromy does not close up: (M.lambda).lambda = {pairing}")
        self.pairing = pairing


class ClassificationGapError(RuntimeError):
    """A closing factorization matched none of the known branches."""


class HypothesisNotMetError(ValueError):
    """A criterion was called without the family witness it requires."""
