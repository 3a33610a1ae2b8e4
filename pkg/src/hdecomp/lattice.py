"""Homology of the torus as a symplectic lattice.

Vectors are integer pairs (p, q) meaning p*mu + q*lambda.  The pairing is
v.w = p_v q_w - q_v p_w, so mu.lambda = +1.  Matrices act on column
vectors (p, q).  A factorization lists its factors with the first-applied
twist at index 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import InvalidCurveError


class LatticeVector(NamedTuple):
    p: int
    q: int

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.p, -self.q)

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


MU = LatticeVector(1, 0)
LAMBDA = LatticeVector(0, 1)


def is_curve(v: Sequence[int]) -> bool:
    """True when v is nonzero and primitive."""
    return gcd(v[0], v[1]) == 1


def check_curve(v: Sequence[int]) -> LatticeVector:
    if not is_curve(v):
        raise InvalidCurveError(f"{tuple(v)} is not a primitive nonzero vector")
    return LatticeVector(int(v[0]), int(v[1]))


def intersection(v: Sequence[int], w: Sequence[int]) -> int:
    return v[0] * w[1] - v[1] * w[0]


def transvection_apply(v: Sequence[int], n: int, w: Sequence[int]) -> LatticeVector:
    """tau_v^n(w) = w + n (v.w) v."""
    c = n * intersection(v, w)
    return LatticeVector(w[0] + c * v[0], w[1] + c * v[1])


@dataclass(frozen=True)
class SL2Matrix:
    m00: int
    m01: int
    m10: int
    m11: int

    def __post_init__(self):
        if self.m00 * self.m11 - self.m01 * self.m10 != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def identity(cls) -> "SL2Matrix":
        return cls(1, 0, 0, 1)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.m00, self.m01), (self.m10, self.m11))

    def trace(self) -> int:
        return self.m00 + self.m11

    def apply(self, v: Sequence[int]) -> LatticeVector:
        return LatticeVector(self.m00 * v[0] + self.m01 * v[1],
                             self.m10 * v[0] + self.m11 * v[1])

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        a, b, c, d = self.m00, self.m01, self.m10, self.m11
        e, f, g, h = other.m00, other.m01, other.m10, other.m11
        return SL2Matrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __neg__(self) -> "SL2Matrix":
        return SL2Matrix(-self.m00, -self.m01, -self.m10, -self.m11)

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.m11, -self.m01, -self.m10, self.m00)


def twist_matrix(v: Sequence[int], n: int) -> SL2Matrix:
    """Matrix of tau_v^n acting on columns."""
    p, q = v
    return SL2Matrix(1 - n * p * q, n * p * p, -n * q * q, 1 + n * p * q)


class TwistFactor(NamedTuple):
    curve: LatticeVector
    exponent: int


Factorization = tuple  # tuple[TwistFactor, ...], index 0 applied first


def make_factor(curve: Sequence[int], exponent: int) -> TwistFactor:
    if exponent not in (1, -1):
        raise ValueError(f"twist exponent must be +-1, got {exponent}")
    return TwistFactor(check_curve(curve), exponent)


def make_factorization(pairs: Iterable[tuple[Sequence[int], int]]) -> Factorization:
    return tuple(make_factor(c, e) for c, e in pairs)


def monodromy(factors: Iterable[tuple[Sequence[int], int]]) -> SL2Matrix:
    """Ordered product of the twists; the first factor acts first."""
    m = SL2Matrix.identity()
    for curve, e in factors:
        check_curve(curve)
        m = twist_matrix(curve, e) @ m
    return m


def lambda_power(sign: int, k: int) -> SL2Matrix:
    t = twist_matrix(LAMBDA, k)
    return t if sign == 1 else -t


def recognize_lambda_power(m: SL2Matrix) -> Optional[tuple[int, int]]:
    """Return (s, k) with m = s * tau_lambda^k, or None."""
    if m.m01 != 0 or m.m00 != m.m11 or m.m00 not in (1, -1):
        return None
    s = m.m00
    return s, -s * m.m10


def closing_pairing(m: SL2Matrix) -> int:
    """(M lambda).lambda; zero exactly when M lambda = +-lambda."""
    return intersection(m.apply(LAMBDA), LAMBDA)


def closes_to_s3(m: SL2Matrix) -> bool:
    return closing_pairing(m) == 0


def trace_formula_sides(u, v, w, l: int, n: int, m: int) -> tuple[int, int]:
    """Both sides of the three-twist trace identity.

    lhs = n m (v.w)^2 + l m (u.w)^2 + l n (u.v)^2
    rhs = l n m (w.u)(w.v)(v.u) + 2 - tr(tau_u^l tau_v^n tau_w^m)
    """
    vw, uw, uv = intersection(v, w), intersection(u, w), intersection(u, v)
    lhs = n * m * vw ** 2 + l * m * uw ** 2 + l * n * uv ** 2
    phi = twist_matrix(u, l) @ twist_matrix(v, n) @ twist_matrix(w, m)
    rhs = l * n * m * intersection(w, u) * intersection(w, v) * intersection(v, u) + 2 - phi.trace()
    return lhs, rhs


def parse_factorization(text: str) -> Factorization:
    """Parse 'p,q:e;p,q:e;...' listed from the last-applied factor to the first.

    The written order follows the left-to-right product, so the string
    "1,2:+1;2,1:+1;1,-1:+1" means tau_{(1,2)} tau_{(2,1)} tau_{(1,-1)}.
    """
    text = text.strip()
    if not text:
        return ()
    factors = []
    for chunk in text.split(";"):
        try:
            curve_part, exp_part = chunk.split(":")
            p_str, q_str = curve_part.split(",")
            factors.append(make_factor((int(p_str), int(q_str)), int(exp_part)))
        except ValueError as exc:
            raise ValueError(f"cannot parse factor {chunk!r}: {exc}") from None
    return tuple(reversed(factors))


def format_factorization(f: Sequence[TwistFactor]) -> str:
    return ";".join(f"{c[0]},{c[1]}:{e:+d}" for c, e in reversed(f))
