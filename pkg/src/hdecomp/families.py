"""The three families of rational-ball triples and membership search.

Ball triples are produced from a family parameter and a sign branch:

* ``F1``: a Markov triple (p1, p2, p3) of ball sizes, orientations (+,+,+).
* ``F2``: an integer triple x with x1^2 + x1 x2 x3 = x2^2 + x3^2, ball sizes
  (|x1|, |x2|, |x3|), orientations (+,-,-).
* ``F3``: odd coprime (a, b) and eps = +-1, ball sizes
  (F_a, |F_{b-eps a}|, F_b), orientations (+,-,+).

A ball B_{p,q} is stored as (|p|, q mod |p|) together with an orientation.
Only q and q' congruent mod p are identified.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import gcd
from typing import Optional, Sequence

from . import curves as cr
from .curves import QSolution, ResidueClass, mod_div
from .diophantine import Triple, enumerate_markov, is_markov
from .errors import DegenerateFamilyError, HypothesisNotMetError
from .fibolucas import fib, fib_mod, fibonacci_index, lucas_mod

FAMILIES = ("F1", "F2", "F3")
DEFAULT_MARKOV_BOUND = 10 ** 5
DEFAULT_F2_BOUND = 10 ** 4
DEFAULT_A_BOUND = 91
F2_SEEDS = ((-1, -1, 0), (-1, 0, -1))


@dataclass(frozen=True, order=True)
class RationalBall:
    p: int
    q: int
    orientation: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +-1")
        if self.p < 0:
            raise ValueError("p must be nonnegative in a normalized ball")
        if self.p == 0:
            if self.q not in (1, -1):
                raise ValueError("a ball with p = 0 needs q = +-1")
        elif not (0 <= self.q < self.p and gcd(self.p, self.q) == 1):
            raise ValueError(f"({self.p},{self.q}) is not a normalized pair")

    @property
    def kind(self) -> str:
        return "zero_p" if self.p == 0 else "standard"

    @property
    def is_four_ball(self) -> bool:
        return self.p == 1

    def __str__(self) -> str:
        sign = "+" if self.orientation == 1 else "-"
        return f"{sign}B({self.p},{self.q})"


def normalize_ball(p: int, q: int, orientation: int = 1) -> RationalBall:
    if p == 0:
        if q not in (1, -1):
            raise ValueError(f"p = 0 requires q = +-1, got q = {q}")
        return RationalBall(0, q, orientation)
    if gcd(p, q) != 1:
        raise ValueError(f"gcd({p},{q}) != 1")
    return RationalBall(abs(p), q % abs(p), orientation)


@dataclass(frozen=True)
class BallTriple:
    balls: tuple[RationalBall, RationalBall, RationalBall]
    family: str
    parameters: tuple
    q_residues: tuple[ResidueClass, ResidueClass, ResidueClass]
    qsolution: QSolution

    @property
    def p_vector(self) -> Triple:
        return tuple(b.p for b in self.balls)

    def sort_key(self):
        return (self.family, self.p_vector, tuple(b.q for b in self.balls),
                tuple(b.orientation for b in self.balls), self.parameters, self.qsolution.sign_choice)

    def multiset_key(self):
        return (self.family, tuple(sorted((b.p, b.q, b.orientation) for b in self.balls)))


@dataclass(frozen=True)
class FamilyWitness:
    family: str
    parameters: tuple
    qsolution: QSolution
    search_bound: int
    ball: RationalBall


def family_data(family: str, params: Sequence[int]) -> tuple[Triple, Triple, Triple]:
    """(delta, p, x) for a family parameter; p are signed ball sizes."""
    if family == "F1":
        if not is_markov(params):
            raise ValueError(f"{tuple(params)} is not a Markov triple")
        return (1, 1, 1), tuple(params), tuple(3 * v for v in _f1_y(params))
    if family == "F2":
        return cr.f2_data(params)
    if family == "F3":
        return cr.f3_data(*params)
    raise ValueError(f"unknown family {family!r}")


def _f1_y(balls: Sequence[int]) -> Triple:
    """Markov triple y whose p-vector (y1, 3 y1 y3 - y2, y3) equals the ball triple."""
    p1, p2, p3 = balls
    return p1, 3 * p1 * p3 - p2, p3


def family_qsolution(family: str, params: Sequence[int], sign: int) -> QSolution:
    if family == "F1":
        return cr.solve_q_f1(*params, sign)
    if family == "F2":
        return cr.solve_q_f2(*params, sign)
    if family == "F3":
        return cr.solve_q_f3(*params, sign)
    raise ValueError(f"unknown family {family!r}")


def qsystem_holds(family: str, params: Sequence[int], qs: QSolution) -> bool:
    if family == "F1":
        return cr.qsystem_f1_holds(*params, qs.witness, qs.sign_choice)
    if family == "F2":
        return cr.qsystem_f2_holds(*params, qs.witness, qs.sign_choice)
    return cr.qsystem_f3_holds(*params, qs.witness, qs.sign_choice)


def ball_triple(family: str, params: Sequence[int], sign: int) -> BallTriple:
    delta, _, _ = family_data(family, params)
    qs = family_qsolution(family, params, sign)
    balls = tuple(normalize_ball(c.p, c.q, d) for c, d in zip(qs.curves, delta))
    return BallTriple(balls, family, tuple(params), qs.residues, qs)


# F2 parameter set

def _f2_hat(x: Triple, i: int) -> int:
    x1, x2, x3 = x
    return (-x2 * x3 - x1, x1 * x3 - x2, x1 * x2 - x3)[i]


def _sign_variants(x: Triple) -> list[Triple]:
    x1, x2, x3 = x
    return [(x1, x2, x3), (-x1, -x2, x3), (-x1, x2, -x3), (x1, -x2, -x3)]


@lru_cache(maxsize=16)
def f2_parameter_set(bound: int) -> tuple[Triple, ...]:
    """All triples with max |x_i| <= bound reachable from the seeds.

    Moves are the mutations x_i -> x_i' of x1^2 + x1 x2 x3 = x2^2 + x3^2 and
    sign changes.  The capped search is complete because a size-decreasing
    mutation never increases the maximum, so every reachable triple is
    joined to a seed through triples no larger than itself.
    """
    seen = set()
    queue = deque()
    for seed in F2_SEEDS:
        for v in _sign_variants(seed):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    while queue:
        x = queue.popleft()
        for i in range(3):
            y = list(x)
            y[i] = _f2_hat(x, i)
            for v in _sign_variants(tuple(y)):
                if max(map(abs, v)) <= bound and v not in seen:
                    seen.add(v)
                    queue.append(v)
    return tuple(sorted(seen, key=lambda t: (max(map(abs, t)), t)))


# Enumeration

def _f1_parameters(bound: int):
    for t in enumerate_markov(bound):
        yield from sorted(set(permutations(t)))


def _f2_parameters(bound: int):
    for x in f2_parameter_set(bound):
        if x[0] != 0:
            yield x


def _f3_parameters(bound: int):
    top = 1
    while fib(top + 1) <= bound:
        top += 1
    odd = [n for n in range(-top, top + 1) if n % 2]
    for a in odd:
        for b in odd:
            if gcd(a, b) != 1:
                continue
            for eps in (1, -1):
                if b == eps * a or abs(fib(b - eps * a)) > bound:
                    continue
                yield a, b, eps


_PARAMETERS = {"F1": _f1_parameters, "F2": _f2_parameters, "F3": _f3_parameters}


def enumerate_family(family: str, bound: int) -> list[BallTriple]:
    """Ball triples with every p_i <= bound, one per multiset of balls."""
    if family not in _PARAMETERS:
        raise ValueError(f"unknown family {family!r}")
    best: dict = {}
    for params in _PARAMETERS[family](bound):
        for sign in (1, -1):
            t = ball_triple(family, params, sign)
            if max(t.p_vector) > bound:
                continue
            k = t.multiset_key()
            if k not in best or t.sort_key() < best[k].sort_key():
                best[k] = t
    return sorted(best.values(), key=BallTriple.sort_key)


def family_members(triples: Sequence[BallTriple]) -> set[tuple[str, int, int]]:
    """(family, p, q) for the positively oriented balls with p > 1."""
    return {(t.family, b.p, b.q) for t in triples for b in t.balls if b.orientation == 1 and b.p > 1}


# Membership

def _validate(p: int, q: int) -> None:
    if p <= 1:
        raise ValueError("p must be > 1")
    if gcd(p, q) != 1:
        raise ValueError(f"gcd({p},{q}) != 1")


def _first_ball_witness(family, params, p, q, bound) -> Optional[FamilyWitness]:
    for sign in (1, -1):
        qs = family_qsolution(family, params, sign)
        if qs.residues[0].contains(q):
            c = qs.curves[0]
            return FamilyWitness(family, tuple(params), qs, bound, normalize_ball(c.p, c.q))
    return None


def membership_f1(p: int, q: int, bound: int = DEFAULT_MARKOV_BOUND) -> Optional[FamilyWitness]:
    _validate(p, q)
    if (q * q + 9) % p:
        return None
    for t in _markov_cached(bound):
        if p not in t:
            continue
        rest = list(t)
        rest.remove(p)
        for p2, p3 in sorted({tuple(rest), tuple(reversed(rest))}, reverse=True):
            w = _first_ball_witness("F1", (p, p2, p3), p, q, bound)
            if w:
                return w
    return None


@lru_cache(maxsize=8)
def _markov_cached(bound: int) -> tuple[Triple, ...]:
    return tuple(sorted(enumerate_markov(bound), key=lambda t: (t[0], t)))


def membership_f2(p: int, q: int, bound: int = DEFAULT_F2_BOUND) -> Optional[FamilyWitness]:
    _validate(p, q)
    if (q * q + 1) % p:
        return None
    candidates = [x for x in f2_parameter_set(bound) if x[0] == p]
    for x in sorted(candidates, key=lambda t: (max(map(abs, t)), tuple(-v for v in t))):
        w = _first_ball_witness("F2", x, p, q, bound)
        if w:
            return w
    return None


def membership_f3(p: int, q: int, a_bound: int = DEFAULT_A_BOUND) -> Optional[FamilyWitness]:
    """Search b over odd values in (0, 2a) with eps = -1.

    This covers every parameter: I(b, eps) = I(-b, -eps), and I(b, -1)
    depends only on b mod 2a.
    """
    _validate(p, q)
    a = fibonacci_index(p)
    if a is None or a % 2 == 0 or a > a_bound:
        return None
    for b in range(1, 2 * a, 2):
        if gcd(a, b) != 1:
            continue
        w = _first_ball_witness("F3", (a, b, -1), p, q, a_bound)
        if w:
            return w
    return None


def almost_complex_embeddable(p: int, q: int, witness: Optional[FamilyWitness]) -> bool:
    if witness is None:
        raise HypothesisNotMetError("a family witness for B_{p,q} is required")
    _validate(p, q)
    return (q * q + 9) % p == 0


# The I(b, eps) invariant and its statistics

def compute_I(b: int, eps: int, a: int) -> ResidueClass:
    """L_b / F_{b - eps a} mod F_a."""
    if b == eps * a:
        raise DegenerateFamilyError(f"b = eps*a for (a,b,eps)=({a},{b},{eps})")
    if gcd(a, b) != 1:
        raise ValueError(f"a={a} and b={b} are not coprime")
    m = abs(fib(a))
    value = mod_div(lucas_mod(b, m), fib_mod(b - eps * a, m), m)
    return ResidueClass(value, m)


def I_equivalent(a: int, b: int, b2: int) -> bool:
    r1, r2 = compute_I(b, -1, a), compute_I(b2, -1, a)
    return r1.value in (r2.value, (-r2.value) % r2.modulus)


def _check_a(a: int) -> None:
    if a % 2 == 0 or a <= 3:
        raise ValueError(f"a must be odd and > 3, got {a}")


def _I_values(a: int) -> list[int]:
    return [compute_I(b, -1, a).value for b in range(1, 2 * a, 2) if gcd(a, b) == 1]


def psi(a: int) -> int:
    """Number of balls B_{F_a, q} in F3, counted as +- classes of I(b, -1)."""
    _check_a(a)
    m = fib(a)
    return len({frozenset((v, (-v) % m)) for v in _I_values(a)})


def s_p_set(a: int) -> set[int]:
    _check_a(a)
    m = fib(a)
    return {v * v % m for v in _I_values(a)}


def all_families_residue_set(p: int, bound: int) -> set[int]:
    """q^2 mod p over positively oriented balls B_{p,q} in all three families."""
    out = set()
    for fam in FAMILIES:
        for t in enumerate_family(fam, bound):
            out.update(b.q * b.q % p for b in t.balls if b.p == p and b.orientation == 1)
    return out
