"""Recovering curve triples and their q-data from solution triples.

Every family below produces a p-vector and a target x-triple.  For a sign
choice ``sign`` the witness q solves the printed linear system whose
right-hand side is ``sign * x``; the curves themselves are
(sign * p_i, q_i), so both sign branches realize the same factorization up
to global negation and a handle twist, and the residues q_i mod |p_i| are
what distinguishes them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, isqrt
from typing import Optional, Sequence

from .diophantine import Triple, is_markov, pairwise_coprime
from .errors import DegenerateFamilyError, InconsistentSystemError, InvalidCurveError
from .fibolucas import fib, lucas
from .lattice import LatticeVector, check_curve, intersection, is_curve


@dataclass(frozen=True)
class CurveTriple:
    curves: tuple[LatticeVector, LatticeVector, LatticeVector]
    delta: Optional[Triple] = None

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(check_curve(c) for c in self.curves))
        if len(self.curves) != 3:
            raise ValueError("a curve triple needs three curves")

    @property
    def x(self) -> Triple:
        return x_of_curves(self.curves)


@dataclass(frozen=True)
class ResidueClass:
    """value mod modulus; modulus 0 is an exact constraint, modulus 1 is none."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 0:
            raise ValueError("modulus must be nonnegative")
        if self.modulus >= 1 and not 0 <= self.value < self.modulus:
            raise ValueError(f"residue {self.value} out of range mod {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "ResidueClass":
        modulus = abs(modulus)
        return cls(value % modulus if modulus else value, modulus)

    def contains(self, v: int) -> bool:
        if self.modulus == 0:
            return v == self.value
        return v % self.modulus == self.value


@dataclass(frozen=True)
class QSolution:
    residues: tuple[ResidueClass, ResidueClass, ResidueClass]
    witness: Triple
    sign_choice: int
    p: Triple

    @property
    def curves(self) -> tuple[LatticeVector, ...]:
        s = self.sign_choice
        return tuple(LatticeVector(s * p, q) for p, q in zip(self.p, self.witness))


def mod_div(r: int, s: int, m: int) -> int:
    """r / s mod m in [0, m); requires gcd(s, m) = 1."""
    m = abs(m)
    if m == 0:
        raise ValueError("modulus must be nonzero")
    if gcd(s, m) != 1:
        raise InconsistentSystemError(f"{s} is not invertible mod {m}")
    if m == 1:
        return 0
    return r * pow(s, -1, m) % m


def x_of_curves(curves: Sequence[Sequence[int]]) -> Triple:
    g1, g2, g3 = curves
    for g in curves:
        if not is_curve(g):
            raise InvalidCurveError(f"{tuple(g)} is not a primitive vector")
    return intersection(g2, g3), intersection(g1, g3), intersection(g1, g2)


def framing(curve: Sequence[int], delta: int) -> int:
    return curve[0] * curve[1] - delta


def verify_eq2(delta: Sequence[int], p: Sequence[int], x: Sequence[int]) -> bool:
    d1, d2, d3 = delta
    p1, p2, p3 = p
    x1, x2, x3 = x
    value = (d1 * p1 * p1 + d2 * p2 * p2 + d3 * p3 * p3
             - d1 * d2 * p1 * p2 * x3 - d1 * d3 * p1 * p3 * x2 - d2 * d3 * p2 * p3 * x1
             + d1 * d2 * d3 * p1 * p3 * x1 * x3)
    return value == 0


def _solve_q(p: Triple, rhs: Triple) -> Triple:
    """Integer q with x_of_curves((p_i, q_i)) == rhs, q_1 reduced mod |p_1|.

    The pairings read  rhs_3 = p1 q2 - q1 p2,  rhs_2 = p1 q3 - q1 p3,
    rhs_1 = p2 q3 - q2 p3.
    """
    p1, p2, p3 = p
    r1, r2, r3 = rhs
    if p1 == 0:
        raise InconsistentSystemError("first p-coordinate must be nonzero")
    q1 = mod_div(-r3, p2, p1)
    n2, n3 = r3 + q1 * p2, r2 + q1 * p3
    if n2 % p1 or n3 % p1:
        raise InconsistentSystemError(f"no integer q for p={p}, x={rhs}")
    q2, q3 = n2 // p1, n3 // p1
    if p2 * q3 - q2 * p3 != r1:
        raise InconsistentSystemError(f"third pairing fails for p={p}, x={rhs}")
    return q1, q2, q3


def _qsolution(p: Triple, x: Triple, sign: int) -> QSolution:
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    q = _solve_q(p, tuple(sign * v for v in x))
    residues = tuple(ResidueClass.of(qi, pi) for qi, pi in zip(q, p))
    return QSolution(residues, q, sign, p)


# Family 1: Markov triples, delta = (1,1,1)

def solve_p_f1(y: Sequence[int]) -> Triple:
    if not is_markov(y):
        raise ValueError(f"{tuple(y)} is not a Markov triple")
    y1, y2, y3 = y
    return y1, 3 * y1 * y3 - y2, y3


def f1_data(y: Sequence[int]) -> tuple[Triple, Triple, Triple]:
    """(delta, p, x) for the Markov triple y."""
    return (1, 1, 1), solve_p_f1(y), tuple(3 * v for v in y)


def solve_q_f1(y1: int, yhat2: int, y3: int, sign: int) -> QSolution:
    # Recover y2 from the mutation relation and confirm Markov input.
    y2 = 3 * y1 * y3 - yhat2
    if not (is_markov((y1, y2, y3)) and pairwise_coprime((y1, yhat2, y3))):
        raise InconsistentSystemError(f"({y1},{yhat2},{y3}) does not come from a Markov triple")
    if (y2 * yhat2 - y1 * y1 - y3 * y3) != 0:
        raise InconsistentSystemError("q1 congruences are inconsistent")
    return _qsolution((y1, yhat2, y3), (3 * y1, 3 * y2, 3 * y3), sign)


def qsystem_f1_holds(y1, yhat2, y3, q, sign) -> bool:
    y2 = 3 * y1 * y3 - yhat2
    q1, q2, q3 = q
    return (y1 * q2 - yhat2 * q1 == sign * 3 * y3
            and y1 * q3 - y3 * q1 == sign * 3 * y2
            and yhat2 * q3 - y3 * q2 == sign * 3 * y1)


# Family 2: x1^2 + x1 x2 x3 = x2^2 + x3^2, balls B_{x1} u -B_{x2} u -B_{x3}

def is_f2_triple(x: Sequence[int]) -> bool:
    x1, x2, x3 = x
    return x1 * x1 + x1 * x2 * x3 == x2 * x2 + x3 * x3


def f2_section(x: Sequence[int]) -> tuple[Triple, int]:
    """The delta=(1,-1,-1) solution s behind x, and its mutated middle entry."""
    x1, x2, x3 = x
    return (x1, x2 - x1 * x3, x3), -x2


def f2_data(x: Sequence[int]) -> tuple[Triple, Triple, Triple]:
    s, _ = f2_section(x)
    x1, x2, x3 = x
    return (1, -1, -1), (x1, x2, -x3), s


def solve_q_f2(x1: int, x2: int, x3: int, sign: int) -> QSolution:
    x = (x1, x2, x3)
    if x1 == 0:
        raise InconsistentSystemError("x1 must be nonzero")
    if not is_f2_triple(x):
        raise InconsistentSystemError(f"{x} does not satisfy x1^2 + x1 x2 x3 = x2^2 + x3^2")
    if not pairwise_coprime(x):
        raise InconsistentSystemError(f"{x} is not pairwise coprime")
    s, s2hat = f2_section(x)
    if (s[1] * s2hat - s[2] ** 2) % x1:
        raise InconsistentSystemError("q1 congruences are inconsistent")
    _, p, _ = f2_data(x)
    return _qsolution(p, s, sign)


def qsystem_f2_holds(x1, x2, x3, q, sign) -> bool:
    (s1, s2, s3), s2hat = f2_section((x1, x2, x3))
    q1, q2, q3 = q
    return (s1 * q2 + s2hat * q1 == sign * s3
            and s1 * q3 + s3 * q1 == sign * s2
            and s3 * q2 - s2hat * q3 == sign * s1)


# Family 3: Fibonacci/Lucas triples, delta = (1,-1,1)

def _check_f3(a: int, b: int, eps: int) -> None:
    if eps not in (1, -1):
        raise ValueError("eps must be +-1")
    if b == eps * a:
        raise DegenerateFamilyError(f"b = eps*a for (a,b,eps)=({a},{b},{eps})")
    if a % 2 == 0 or b % 2 == 0:
        raise ValueError(f"a and b must be odd, got ({a},{b})")
    if gcd(a, b) != 1:
        raise ValueError(f"a and b must be coprime, got ({a},{b})")


def f3_data(a: int, b: int, eps: int) -> tuple[Triple, Triple, Triple]:
    _check_f3(a, b, eps)
    p = (fib(a), fib(b - eps * a), -eps * fib(b))
    x = (lucas(a), -eps * lucas(a + eps * b), lucas(b))
    return (1, -1, 1), p, x


def solve_q_f3(a: int, b: int, eps: int, sign: int) -> QSolution:
    _, p, x = f3_data(a, b, eps)
    fa, fbe, fb = fib(a), fib(b - eps * a), fib(b)
    if (eps * lucas(b) * fb - fa * lucas(a)) % fbe:
        raise InconsistentSystemError("q1 congruences are inconsistent")
    return _qsolution(p, x, sign)


def qsystem_f3_holds(a, b, eps, q, sign) -> bool:
    fa, fbe, fb = fib(a), fib(b - eps * a), fib(b)
    q1, q2, q3 = q
    return (fa * q2 - fbe * q1 == sign * lucas(b)
            and fa * q3 + eps * fb * q1 == -sign * eps * lucas(a + eps * b)
            and fbe * q3 + eps * fb * q2 == sign * lucas(a))


def fibolucas_identity_holds(a: int, b: int, eps: int) -> bool:
    fa, fbe, fb = fib(a), fib(b - eps * a), fib(b)
    la, lb, lab = lucas(a), lucas(b), lucas(a + eps * b)
    return (fa * fa - fbe * fbe + fb * fb + fa * fbe * lb - fa * fb * lab
            - eps * fbe * fb * la + eps * fa * fb * la * lb) == 0


# The four specializations of the p-system, one per minimal case.
#   1: delta=(1,1,1),    a=0, k=-9
#   2: delta=(-1,-1,-1), a=4, k=3
#   3: delta=(1,-1,-1),  a=0, k=-1
#   4: delta=(1,-1,1),   a=4, k=-5
TABLE_CASES = {
    1: ((1, 1, 1), 0, -9),
    2: ((-1, -1, -1), 4, 3),
    3: ((1, -1, -1), 0, -1),
    4: ((1, -1, 1), 4, -5),
}


def _table_system(case: int, x: Sequence[int]):
    """(c1, r1, c2, r2, c3, r3) meaning p1^2*c1 = r1, p1 p2*c2 = r2, p1 p3*c3 = r3."""
    x1, x2, x3 = x
    if case == 1:
        return -9, -x1 * x1, -9, x1 * x2 - x1 * x1 * x3, -9, -x1 * x3
    if case == 2:
        return -3, x1 * x1 - 4, -3, 2 * x3 - x1 * x2 - x1 * x1 * x3, -3, 2 * x2 + x1 * x3
    if case == 3:
        return 1, x1 * x1, 1, x1 * (x2 + x1 * x3), 1, -x1 * x3
    if case == 4:
        return 5, 4 + x1 * x1, 5, 2 * x3 + x1 * x2 + x1 * x1 * x3, 5, 2 * x2 + x1 * x3
    raise ValueError(f"unknown case {case}")


def _divisor_pairs(n: int) -> list[tuple[int, int]]:
    out = []
    for d in range(1, isqrt(abs(n)) + 1):
        if n % d == 0:
            e = n // d
            out += [(d, e), (-d, -e), (e, d), (-e, -d)]
    return sorted(set(out))


def solve_p_table_case(case: int, x: Sequence[int]) -> list[Triple]:
    """All integer p solving the case's p-system; both global signs listed."""
    c1, r1, c2, r2, c3, r3 = _table_system(case, x)
    if r1 % c1:
        return []
    sq = r1 // c1
    if sq < 0 or isqrt(sq) ** 2 != sq:
        return []
    p1 = isqrt(sq)
    if p1 == 0:
        if r2 or r3:
            return []
        if case != 2:
            raise ValueError(f"p1 = 0 leaves case {case} underdetermined")
        x1, x2, x3 = x
        aux = 2 * x1 - x2 * x3 - x1 * x3 * x3  # = -3 p2 p3
        if aux == 0:
            raise ValueError("p1 = p2 p3 = 0 leaves the system underdetermined")
        if aux % 3:
            return []
        return [(0, d, e) for d, e in _divisor_pairs(aux // -3)]
    out = []
    for s in (p1, -p1):
        if r2 % (c2 * s) or r3 % (c3 * s):
            continue
        out.append((s, r2 // (c2 * s), r3 // (c3 * s)))
    return sorted(out)


# Bounded realizability oracle

def canonical_curve_triple(curves: Sequence[Sequence[int]]) -> tuple[LatticeVector, ...]:
    """Representative modulo global negation and q -> q - k p on every curve."""
    cs = [LatticeVector(*c) for c in curves]
    j = next((i for i, c in enumerate(cs) if c.p != 0), None)
    if j is None:
        s = 1 if cs[0].q > 0 else -1
        return tuple(LatticeVector(0, s * c.q) for c in cs)
    s = 1 if cs[j].p > 0 else -1
    cs = [LatticeVector(s * c.p, s * c.q) for c in cs]
    k = cs[j].q // cs[j].p
    return tuple(LatticeVector(c.p, c.q - k * c.p) for c in cs)


def realizability_oracle(x: Sequence[int], bound: int) -> list[CurveTriple]:
    """Curve triples with coordinates in [-bound, bound] whose pairings are x.

    Results are canonical representatives modulo handle twists and global
    negation.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    x1, x2, x3 = x
    box = [LatticeVector(p, q) for p, q in product(range(-bound, bound + 1), repeat=2) if gcd(p, q) == 1]
    found = set()
    for g1 in box:
        for g2 in box:
            if intersection(g1, g2) != x3:
                continue
            if x3 != 0:
                # Cramer on  p1 q - q1 p = x2,  p2 q - q2 p = x1
                num_p = x2 * g2.p - g1.p * x1
                num_q = g2.q * x2 - g1.q * x1
                if num_p % x3 or num_q % x3:
                    continue
                g3 = LatticeVector(num_p // x3, num_q // x3)
                candidates = [g3] if max(abs(g3.p), abs(g3.q)) <= bound and is_curve(g3) else []
            else:
                candidates = [g for g in box if intersection(g1, g) == x2 and intersection(g2, g) == x1]
            for g3 in candidates:
                found.add(canonical_curve_triple((g1, g2, g3)))
    return [CurveTriple(t) for t in sorted(found)]

