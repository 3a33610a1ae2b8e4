"""Exact integer arithmetic for genus-1 horizontal handlebody decompositions."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ClassificationGapError,
    DegenerateFamilyError,
    HypothesisNotMetError,
    InconsistentSystemError,
    InvalidCurveError,
    NonClosingMonodromyError,
)
from .lattice import (  # noqa: E402
    LAMBDA,
    MU,
    LatticeVector,
    SL2Matrix,
    TwistFactor,
    monodromy,
    parse_factorization,
    recognize_lambda_power,
    twist_matrix,
)
from .diophantine import Solution, descend, enumerate_markov, enumerate_solutions  # noqa: E402
from .fibolucas import fib, lucas, primitive_factor, rank_of_apparition  # noqa: E402
from .families import (  # noqa: E402
    RationalBall,
    enumerate_family,
    membership_f1,
    membership_f2,
    membership_f3,
)
from .classifier import ManifoldLabel, classify, identify  # noqa: E402

__all__ = [
    "ClassificationGapError", "DegenerateFamilyError", "HypothesisNotMetError",
    "InconsistentSystemError", "InvalidCurveError", "NonClosingMonodromyError",
    "LAMBDA", "MU", "LatticeVector", "SL2Matrix", "TwistFactor", "monodromy",
    "parse_factorization", "recognize_lambda_power", "twist_matrix",
    "Solution", "descend", "enumerate_markov", "enumerate_solutions",
    "fib", "lucas", "primitive_factor", "rank_of_apparition",
    "RationalBall", "enumerate_family", "membership_f1", "membership_f2", "membership_f3",
    "ManifoldLabel", "classify", "identify",
]
