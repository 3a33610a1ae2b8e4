"""Closed 4-manifold labels for genus-1 horizontal twist factorizations.

The input is a factorization of at most three twists whose monodromy sends
lambda to +-lambda.  Three-twist inputs are reduced by Hurwitz moves on the
actual curves until the solution triple is weakly minimal, then looked up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .curves import x_of_curves
from .diophantine import Solution, first_decreasing_slot
from .errors import ClassificationGapError, InconsistentSystemError, NonClosingMonodromyError
from .lattice import (
    LAMBDA,
    LatticeVector,
    SL2Matrix,
    TwistFactor,
    check_curve,
    closing_pairing,
    intersection,
    monodromy,
    recognize_lambda_power,
    transvection_apply,
)


@dataclass(frozen=True)
class ManifoldLabel:
    """Connected sum of CP2(+1), CP2(-1), S1xS3 and doubles B_{p,q} u -B_{p,q}."""

    cp2_plus: int = 0
    cp2_minus: int = 0
    s1xs3: int = 0
    doubles: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        kept = tuple(sorted(d for d in self.doubles if d != (1, 0)))
        object.__setattr__(self, "doubles", kept)

    def __add__(self, other: "ManifoldLabel") -> "ManifoldLabel":
        return ManifoldLabel(self.cp2_plus + other.cp2_plus, self.cp2_minus + other.cp2_minus,
                             self.s1xs3 + other.s1xs3, self.doubles + other.doubles)

    def mirror(self) -> "ManifoldLabel":
        return ManifoldLabel(self.cp2_minus, self.cp2_plus, self.s1xs3, self.doubles)

    def euler_characteristic(self) -> int:
        return 2 + self.cp2_plus + self.cp2_minus - 2 * self.s1xs3

    def __str__(self) -> str:
        parts = []
        for count, name in ((self.cp2_plus, "CP2(+1)"), (self.cp2_minus, "CP2(-1)"), (self.s1xs3, "S1xS3")):
            if count:
                parts.append(name if count == 1 else f"{count}*{name}")
        parts += [f"Double({p},{q})" for p, q in self.doubles]
        return " # ".join(parts) if parts else "S4"


S4 = ManifoldLabel()
S1XS3 = ManifoldLabel(s1xs3=1)


def cp2(sign: int) -> ManifoldLabel:
    return ManifoldLabel(cp2_plus=1) if sign == 1 else ManifoldLabel(cp2_minus=1)


def double(curve: Sequence[int]) -> ManifoldLabel:
    """Double read from a curve p mu + q lambda; q is taken up to sign mod p."""
    p, q = curve
    if p == 0:
        raise ValueError("a double needs p != 0")
    if p < 0:
        p, q = -p, -q
    qbar = q % p
    return ManifoldLabel(doubles=((p, min(qbar, (p - qbar) % p)),))


# Moves on factorizations

def mirror(f: Sequence[TwistFactor]) -> tuple[TwistFactor, ...]:
    return tuple(TwistFactor(LatticeVector(c.p, -c.q), -e) for c, e in f)


def handle_twist(f: Sequence[TwistFactor], c: int) -> tuple[TwistFactor, ...]:
    return tuple(TwistFactor(LatticeVector(g.p, g.q + c * g.p), e) for g, e in f)


def negate_curves(f: Sequence[TwistFactor], which: Sequence[int] = (0, 1, 2)) -> tuple[TwistFactor, ...]:
    return tuple(TwistFactor(-g if i in which else g, e) for i, (g, e) in enumerate(f))


def hurwitz_move(f: Sequence[TwistFactor], i: int, direction: str) -> tuple[TwistFactor, ...]:
    """Hurwitz move on the factors at 1-based positions i and i+1.

    left:  (g_{i+1}, g_i) -> (g_{i+1} g_i g_{i+1}^-1, g_{i+1})
    right: (g_{i+1}, g_i) -> (g_i, g_i^-1 g_{i+1} g_i)
    The conjugated curve is stored negated, which leaves the twist unchanged
    and makes the effect on pairings a permutation composed with a mutation.
    """
    if not 1 <= i < len(f):
        raise IndexError(f"position {i} out of range for {len(f)} factors")
    f = list(f)
    (c_lo, e_lo), (c_hi, e_hi) = f[i - 1], f[i]
    if direction == "left":
        moved = -transvection_apply(c_hi, e_hi, c_lo)
        f[i - 1], f[i] = TwistFactor(c_hi, e_hi), TwistFactor(moved, e_lo)
    elif direction == "right":
        moved = -transvection_apply(c_lo, -e_lo, c_hi)
        f[i - 1], f[i] = TwistFactor(moved, e_hi), TwistFactor(c_lo, e_lo)
    else:
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    return tuple(f)


# Moves realizing "mutate at slot k", each followed by a transposition.
_MUTATION_MOVES = {1: (1, "right"), 2: (2, "right"), 3: (2, "left")}


def rotate(f: Sequence[TwistFactor]) -> tuple[TwistFactor, ...]:
    """Two Hurwitz moves acting on (delta, x) as the cyclic permutation (123)."""
    return hurwitz_move(hurwitz_move(f, 1, "right"), 2, "right")


# Classification

@dataclass
class Classification:
    label: ManifoldLabel
    monodromy: SL2Matrix
    lambda_power: Optional[tuple[int, int]]
    branch: str
    trace: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def deltas(f: Sequence[TwistFactor]) -> tuple[int, ...]:
    return tuple(e for _, e in f)


def curves_of(f: Sequence[TwistFactor]) -> tuple[LatticeVector, ...]:
    return tuple(c for c, _ in f)


def solution_of(f: Sequence[TwistFactor]) -> Solution:
    return Solution.of(deltas(f), x_of_curves(curves_of(f)))


def two_twist_invariants(f: Sequence[TwistFactor]) -> tuple[int, int, int, str]:
    """(x, y, n, branch) with x = g1.lambda, y = g2.lambda, n = g2.g1 >= 0."""
    (g1, d1), (g2, d2) = f
    if intersection(g2, g1) < 0:
        g2 = -g2
    x, y, n = intersection(g1, LAMBDA), intersection(g2, LAMBDA), intersection(g2, g1)
    if d2 * x * x + d1 * y * y + n * x * y != 0:
        raise InconsistentSystemError(f"two-twist relation fails for x={x}, y={y}, n={n}")
    if x == y == 0:
        return x, y, n, "both-lambda"
    if n == 0:
        return x, y, n, "n0"
    if n == 2:
        return x, y, n, "n2"
    raise ClassificationGapError(f"two-twist data x={x}, y={y}, n={n} matches no branch")


def _three_twist(f: tuple[TwistFactor, ...], result: Classification) -> ManifoldLabel:
    s = solution_of(f)
    if s.a not in (0, 4):
        raise ClassificationGapError(f"invariant a = {s.a} is not 0 or 4")
    result.trace.append(f"start delta={s.delta} x={s.x} a={s.a}")
    while (k := first_decreasing_slot(s)) is not None:
        pos, direction = _MUTATION_MOVES[k]
        f = hurwitz_move(f, pos, direction)
        s = solution_of(f)
        result.trace.append(f"mutate slot {k} via {direction}@{pos}: delta={s.delta} x={s.x}")
    flipped = sum(s.delta) < 0
    if flipped:
        f = mirror(f)
        s = solution_of(f)
        result.trace.append(f"mirror: delta={s.delta} x={s.x}")
    while s.delta not in ((1, 1, 1), (-1, 1, 1)):
        f = rotate(f)
        s = solution_of(f)
        result.trace.append(f"rotate: delta={s.delta} x={s.x}")
    pattern = tuple(abs(v) for v in s.x)
    label = _lookup(f, s, pattern, result)
    return label.mirror() if flipped else label


def _lookup(f, s: Solution, pattern, result: Classification) -> ManifoldLabel:
    if s.delta == (1, 1, 1) and s.a == 0:
        if pattern == (0, 0, 0):
            return ManifoldLabel(cp2_minus=3, s1xs3=1)
        if pattern == (3, 3, 3):
            return cp2(1)
    elif s.delta == (1, 1, 1) and s.a == 4:
        if pattern == (1, 1, 1):
            return cp2(-1)
    elif s.delta == (-1, 1, 1) and s.a == 0:
        if pattern == (0, 0, 0):
            return ManifoldLabel(cp2_plus=1, cp2_minus=2, s1xs3=1)
        t = pattern[0]
        if t > 0 and pattern in ((t, t, 0), (t, 0, t)):
            if pattern == (t, 0, t):
                f = hurwitz_move(f, 2, "left")
                result.trace.append(f"swap repeated curve into slot 2: x={x_of_curves(curves_of(f))}")
            g1, g3 = f[0].curve, f[2].curve
            if g3 not in (LAMBDA, -LAMBDA) or abs(g1.p) != t:
                raise ClassificationGapError(f"unexpected terminal curves {curves_of(f)}")
            result.notes.append("double read from the repeated terminal curve")
            return cp2(-1) + double(g1)
    elif s.delta == (-1, 1, 1) and s.a == 4:
        if pattern == (2, 1, 1):
            return cp2(1)
    raise ClassificationGapError(f"weakly minimal delta={s.delta} x={s.x} a={s.a} matches no case")


def classify(factors: Sequence[tuple[Sequence[int], int]], h1: int = 1) -> Classification:
    f = tuple(TwistFactor(check_curve(c), e) for c, e in factors)
    if any(e not in (1, -1) for _, e in f):
        raise ValueError("twist exponents must be +-1")
    if h1 != 1:
        raise ValueError("only decompositions with one 1-handle are handled")
    if len(f) > 3:
        raise ValueError("at most three twists are handled")
    m = monodromy(f)
    if closing_pairing(m) != 0:
        raise NonClosingMonodromyError(closing_pairing(m))
    result = Classification(S4, m, recognize_lambda_power(m), branch="")
    if len(f) == 0:
        result.branch, result.label = "no-twist", S1XS3
    elif len(f) == 1:
        (g, d), = f
        if g not in (LAMBDA, -LAMBDA):
            raise ClassificationGapError(f"single twist about {g} closes but is not lambda")
        result.branch, result.label = "one-twist", cp2(-d) + S1XS3
    elif len(f) == 2:
        _, _, _, branch = two_twist_invariants(f)
        result.branch = branch
        if branch == "both-lambda":
            result.label = cp2(-f[0].exponent) + cp2(-f[1].exponent) + S1XS3
        elif branch == "n0":
            result.label = double(f[1].curve)
            result.notes.append("double read from the second curve")
        else:
            result.label = S4
    else:
        result.branch = "three-twist"
        result.label = _three_twist(f, result)
    return result


def identify(factors: Sequence[tuple[Sequence[int], int]], h1: int = 1) -> ManifoldLabel:
    return classify(factors, h1).label


def euler_characteristic(label: ManifoldLabel, n_twists: int, h1: int = 1) -> tuple[int, int]:
    return label.euler_characteristic(), 1 - h1 + n_twists
