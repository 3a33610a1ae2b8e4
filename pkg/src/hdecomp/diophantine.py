"""Solutions of d1 x1^2 + d2 x2^2 + d3 x3^2 - x1 x2 x3 = d1 d2 d3 a.

A solution carries its sign triple ``delta`` and the integer triple ``x``.
Indices in the public functions (mutation slot, permutation images) are
1-based to match how the triples are usually written.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from math import gcd, isqrt
from typing import Iterable, Sequence

Triple = tuple[int, int, int]

SIGN_PAIRS = {12: (0, 1), 13: (0, 2), 23: (1, 2)}
# Solution-level shadows of the four Hurwitz moves, as (permutation, mutation slot).
HURWITZ_TRANSFORMS = {
    1: ((1, 3, 2), 3),  # (23) after mutation at 3
    2: ((1, 3, 2), 2),  # (23) after mutation at 2
    3: ((2, 1, 3), 1),  # (12) after mutation at 1
    4: ((2, 1, 3), 2),  # (12) after mutation at 2
}
HURWITZ_INVERSE = {1: 2, 2: 1, 3: 4, 4: 3}


def _check_delta(delta: Sequence[int]) -> Triple:
    if len(delta) != 3 or any(d not in (1, -1) for d in delta):
        raise ValueError(f"sign triple must have entries +-1, got {tuple(delta)}")
    return tuple(int(d) for d in delta)


def eval_a(delta: Sequence[int], x: Sequence[int]) -> int:
    d1, d2, d3 = delta
    x1, x2, x3 = x
    return d1 * d2 * d3 * (d1 * x1 * x1 + d2 * x2 * x2 + d3 * x3 * x3 - x1 * x2 * x3)


@dataclass(frozen=True)
class Solution:
    delta: Triple
    x: Triple
    a: int

    def __post_init__(self):
        _check_delta(self.delta)
        if eval_a(self.delta, self.x) != self.a:
            raise ValueError(f"{self.x} does not solve the equation for delta={self.delta}, a={self.a}")

    @classmethod
    def of(cls, delta: Sequence[int], x: Sequence[int]) -> "Solution":
        delta = _check_delta(delta)
        x = tuple(int(v) for v in x)
        return cls(delta, x, eval_a(delta, x))

    def hat(self, i: int) -> int:
        """Value that would replace x_i under mutation at slot i (1-based)."""
        j, k = [t for t in range(3) if t != i - 1]
        return self.delta[i - 1] * self.x[j] * self.x[k] - self.x[i - 1]

    def size(self) -> int:
        return sum(abs(v) for v in self.x)


def mutate(s: Solution, i: int) -> Solution:
    if i not in (1, 2, 3):
        raise ValueError(f"mutation slot must be 1, 2 or 3, got {i}")
    x = list(s.x)
    x[i - 1] = s.hat(i)
    return Solution(s.delta, tuple(x), s.a)


def sign_change(s: Solution, pair: int) -> Solution:
    i, j = SIGN_PAIRS[pair]
    x = list(s.x)
    x[i], x[j] = -x[i], -x[j]
    return Solution(s.delta, tuple(x), s.a)


def permute(s: Solution, sigma: Sequence[int]) -> Solution:
    """new[i] = old[sigma(i)] on both delta and x; sigma is 1-based."""
    if sorted(sigma) != [1, 2, 3]:
        raise ValueError(f"not a permutation of (1,2,3): {tuple(sigma)}")
    return Solution(tuple(s.delta[k - 1] for k in sigma), tuple(s.x[k - 1] for k in sigma), s.a)


def hurwitz_on_solution(s: Solution, move: int) -> Solution:
    sigma, slot = HURWITZ_TRANSFORMS[move]
    return permute(mutate(s, slot), sigma)


def is_weakly_minimal(s: Solution) -> bool:
    return all(abs(s.x[i - 1]) <= abs(s.hat(i)) for i in (1, 2, 3))


def is_minimal(s: Solution) -> bool:
    return all(abs(s.x[i - 1]) < abs(s.hat(i)) for i in (1, 2, 3))


def first_decreasing_slot(s: Solution) -> int | None:
    for i in (1, 2, 3):
        if abs(s.hat(i)) < abs(s.x[i - 1]):
            return i
    return None


def descend(s: Solution) -> tuple[Solution, list[int]]:
    """Mutate at the first size-decreasing slot until none is left."""
    steps = []
    while (i := first_decreasing_slot(s)) is not None:
        s = mutate(s, i)
        steps.append(i)
    return s, steps


def _solutions_with_x1(args) -> list[Triple]:
    delta, a, bound, x1_values = args
    d1, d2, d3 = delta
    rhs = d1 * d2 * d3 * a
    out = []
    for x1 in x1_values:
        for x2 in range(-bound, bound + 1):
            # d3 x3^2 - x1 x2 x3 + (d1 x1^2 + d2 x2^2 - rhs) = 0, scaled by d3
            b = d3 * x1 * x2
            c = d3 * (d1 * x1 * x1 + d2 * x2 * x2 - rhs)
            disc = b * b - 4 * c
            if disc < 0:
                continue
            r = isqrt(disc)
            if r * r != disc or (b + r) % 2:
                continue
            for x3 in {(b + r) // 2, (b - r) // 2}:
                if -bound <= x3 <= bound:
                    out.append((x1, x2, x3))
    return out


def enumerate_solutions(delta: Sequence[int], a: int, bound: int, jobs: int = 1) -> list[Solution]:
    """Every solution with max |x_i| <= bound, sorted lexicographically."""
    delta = _check_delta(delta)
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    xs = list(range(-bound, bound + 1))
    if jobs > 1:
        chunks = [xs[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_solutions_with_x1, [(delta, a, bound, c) for c in chunks])
            triples = [t for part in parts for t in part]
    else:
        triples = _solutions_with_x1((delta, a, bound, xs))
    return [Solution(delta, t, a) for t in sorted(triples)]


def _class_members(s: Solution) -> set[Triple]:
    """Orbit of x under sign changes, plus permutations when delta is constant."""
    base = {s.x}
    if len(set(s.delta)) == 1:
        base = set(permutations(s.x))
    out = set()
    for x1, x2, x3 in base:
        out.update({(x1, x2, x3), (-x1, -x2, x3), (-x1, x2, -x3), (x1, -x2, -x3)})
    return out


def canonical_representative(s: Solution) -> Triple:
    """Most nonnegative entries first, then lexicographically least with zeros last."""
    return min(_class_members(s),
               key=lambda x: (-sum(v >= 0 for v in x), tuple((v == 0, v) for v in x)))


def weakly_minimal_classes(delta: Sequence[int], a: int, bound: int) -> list[Triple]:
    reps = {canonical_representative(s)
            for s in enumerate_solutions(delta, a, bound) if is_weakly_minimal(s)}
    return sorted(reps, key=lambda x: (max(map(abs, x)), x))


# Markov triples

def is_markov(y: Sequence[int]) -> bool:
    y1, y2, y3 = y
    return min(y) > 0 and y1 * y1 + y2 * y2 + y3 * y3 == 3 * y1 * y2 * y3


def _desc(t: Iterable[int]) -> Triple:
    return tuple(sorted(t, reverse=True))


def enumerate_markov(limit: int) -> list[Triple]:
    """Markov triples with max <= limit, by breadth-first search from (1,1,1).

    The search only keeps triples within the limit; this loses nothing
    because every triple other than (1,1,1) and (2,1,1) has a neighbour
    with a strictly smaller maximum.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    start = (1, 1, 1)
    seen = {start}
    queue = deque([start])
    while queue:
        y = queue.popleft()
        for k in range(3):
            i, j = [t for t in range(3) if t != k]
            nxt = list(y)
            nxt[k] = 3 * y[i] * y[j] - y[k]
            t = _desc(nxt)
            if t[0] <= limit and t not in seen:
                seen.add(t)
                queue.append(t)
    return sorted(seen)


def markov_scan(limit: int) -> list[Triple]:
    """Exhaustive Markov enumeration over pairs (y2, y3) with y2*y3 <= limit.

    For y1 >= y2 >= y3 the equation gives 3 y1 y2 y3 <= 3 y1^2, so y2 y3 <= y1.
    """
    out = set()
    for y3 in range(1, limit + 1):
        for y2 in range(y3, limit // y3 + 1):
            b = 3 * y2 * y3
            disc = b * b - 4 * (y2 * y2 + y3 * y3)
            r = isqrt(disc)
            if r * r != disc or (b + r) % 2:
                continue
            for y1 in {(b + r) // 2, (b - r) // 2}:
                if y2 <= y1 <= limit:
                    out.add((y1, y2, y3))
    return sorted(out)


def pairwise_coprime(t: Sequence[int]) -> bool:
    return gcd(t[0], t[1]) == gcd(t[0], t[2]) == gcd(t[1], t[2]) == 1


# Orbit graphs

def orbit_graph(s: Solution, depth: int, moves: str = "mutation"):
    """Breadth-first orbit up to ``depth`` edges away from ``s``.

    Returns (nodes in discovery order, edges as (src, dst, label)).
    With moves="mutation" edges are mutations; with "hurwitz" they are the
    four Hurwitz shadows.
    """
    if moves == "mutation":
        steps = [(f"mu{i}", lambda t, i=i: mutate(t, i)) for i in (1, 2, 3)]
    elif moves == "hurwitz":
        steps = [(f"h{m}", lambda t, m=m: hurwitz_on_solution(t, m)) for m in (1, 2, 3, 4)]
    else:
        raise ValueError(f"unknown move set {moves!r}")
    key = lambda t: (t.delta, t.x)  # noqa: E731
    nodes = [s]
    seen = {key(s)}
    edges = []
    frontier = [s]
    for _ in range(depth):
        nxt = []
        for t in frontier:
            for label, fn in steps:
                u = fn(t)
                edges.append((t, u, label))
                if key(u) not in seen:
                    seen.add(key(u))
                    nodes.append(u)
                    nxt.append(u)
        frontier = nxt
    return nodes, edges
