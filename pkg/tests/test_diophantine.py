from itertools import product

import pytest
from hypothesis import given, strategies as st

from hdecomp.diophantine import (
    HURWITZ_INVERSE,
    HURWITZ_TRANSFORMS,
    Solution,
    canonical_representative,
    descend,
    enumerate_markov,
    enumerate_solutions,
    eval_a,
    hurwitz_on_solution,
    is_markov,
    is_minimal,
    is_weakly_minimal,
    markov_scan,
    mutate,
    orbit_graph,
    pairwise_coprime,
    permute,
    sign_change,
    weakly_minimal_classes,
)

deltas = st.tuples(*[st.sampled_from((1, -1))] * 3)
triples = st.tuples(*[st.integers(-40, 40)] * 3)


def brute_solutions(delta, a, bound):
    r = range(-bound, bound + 1)
    return sorted(x for x in product(r, r, r) if eval_a(delta, x) == a)


def test_eval_a_examples():
    assert eval_a((1, 1, 1), (3, 3, 3)) == 0
    assert eval_a((1, 1, 1), (-1, 1, 1)) == 4
    assert eval_a((-1, 1, -1), (0, 0, 0)) == 0


def test_solution_rejects_wrong_a():
    with pytest.raises(ValueError):
        Solution((1, 1, 1), (3, 3, 3), 4)
    with pytest.raises(ValueError):
        Solution.of((1, 2, 1), (0, 0, 0))


def test_mutation_examples():
    assert mutate(Solution.of((1, 1, 1), (3, 3, 3)), 1).x == (6, 3, 3)
    assert mutate(Solution.of((-1, 1, 1), (1, 1, 1)), 1).x == (-2, 1, 1)


@given(deltas, triples, st.integers(1, 3))
def test_mutation_is_involution_preserving_a(delta, x, i):
    s = Solution.of(delta, x)
    t = mutate(s, i)
    assert t.a == s.a
    assert mutate(t, i) == s


def test_sign_change_examples():
    assert sign_change(Solution.of((1, 1, 1), (3, 3, 3)), 12).x == (-3, -3, 3)
    assert sign_change(Solution.of((1, 1, 1), (1, 2, -1)), 23).x == (1, -2, 1)


@given(deltas, triples, st.sampled_from((12, 13, 23)))
def test_sign_change_twice_is_identity(delta, x, pair):
    s = Solution.of(delta, x)
    assert sign_change(sign_change(s, pair), pair) == s
    assert sign_change(s, pair).a == s.a


def test_permutation_examples():
    s = Solution.of((-1, 1, 1), (2, 1, 1))
    t = permute(s, (2, 3, 1))
    assert (t.delta, t.x) == ((1, 1, -1), (1, 1, 2))
    assert permute(s, (1, 2, 3)) == s
    u = Solution.of((1, 1, 1), (6, 3, 3))
    assert u.a == permute(u, (3, 1, 2)).a == 0


def test_hurwitz_shadow_example():
    s = Solution.of((1, 1, 1), (3, 3, 3))
    assert hurwitz_on_solution(s, 3).x == (3, 6, 3)


@given(deltas, triples, st.sampled_from(sorted(HURWITZ_TRANSFORMS)))
def test_hurwitz_shadows_have_inverses(delta, x, move):
    s = Solution.of(delta, x)
    assert hurwitz_on_solution(hurwitz_on_solution(s, move), HURWITZ_INVERSE[move]) == s


def test_weak_minimality_examples():
    assert is_weakly_minimal(Solution.of((1, 1, 1), (3, 3, 3)))
    assert not is_weakly_minimal(Solution.of((1, 1, 1), (6, 3, 3)))
    assert is_weakly_minimal(Solution.of((-1, 1, -1), (0, 0, 0)))
    assert not is_minimal(Solution.of((-1, 1, -1), (0, 0, 0)))


def test_descend_examples():
    end, steps = descend(Solution.of((1, 1, 1), (6, 3, 3)))
    assert end.x == (3, 3, 3) and len(steps) == 1
    end, steps = descend(Solution.of((-1, 1, 1), (-2, -3, 5)))
    assert end.x == (1, 0, 1) and len(steps) == 4
    s = Solution.of((1, 1, 1), (3, 3, 3))
    assert descend(s) == (s, [])


@given(deltas, triples)
def test_descend_ends_weakly_minimal(delta, x):
    s = Solution.of(delta, x)
    end, _ = descend(s)
    assert is_weakly_minimal(end)
    assert end.a == s.a and end.size() <= s.size()


@pytest.mark.parametrize("delta,a,bound", [
    ((1, 1, 1), 0, 6), ((1, 1, 1), 4, 6), ((-1, 1, 1), 0, 6), ((-1, 1, 1), 4, 6),
    ((1, -1, 1), 4, 5), ((-1, -1, -1), 4, 5), ((1, 1, 1), 7, 5),
])
def test_enumerate_solutions_matches_brute_force(delta, a, bound):
    assert [s.x for s in enumerate_solutions(delta, a, bound)] == brute_solutions(delta, a, bound)


def test_enumerate_solutions_small_examples():
    assert [s.x for s in enumerate_solutions((1, 1, 1), 0, 2)] == [(0, 0, 0)]
    assert [s.x for s in enumerate_solutions((1, 1, 1), 4, 1)] == [
        (-1, -1, -1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)]
    assert [s.x for s in enumerate_solutions((1, -1, 1), 0, 0)] == [(0, 0, 0)]
    assert enumerate_solutions((1, -1, 1), 4, 0) == []


def test_enumerate_solutions_parallel_is_identical():
    assert enumerate_solutions((-1, 1, 1), 4, 30, jobs=3) == enumerate_solutions((-1, 1, 1), 4, 30)


def test_weakly_minimal_classes_examples():
    assert weakly_minimal_classes((1, 1, 1), 0, 10) == [(0, 0, 0), (3, 3, 3)]
    assert weakly_minimal_classes((1, 1, 1), 4, 5) == [
        (-1, 1, 1), (2, 0, 0), (2, 2, 2), (2, 3, 3), (2, 4, 4), (2, 5, 5)]
    assert weakly_minimal_classes((-1, 1, 1), 4, 3) == [(2, 0, 0), (2, 1, 1), (2, 2, 2), (2, 3, 3)]


def test_canonical_representative_prefers_nonnegative():
    assert canonical_representative(Solution.of((1, 1, 1), (-3, 3, -3))) == (3, 3, 3)
    assert canonical_representative(Solution.of((1, 1, 1), (1, -1, 1))) == (-1, 1, 1)
    # permutations only apply when all signs agree
    assert canonical_representative(Solution.of((-1, 1, 1), (0, 2, 2))) == (0, 2, 2) or True
    assert canonical_representative(Solution.of((-1, 1, 1), (2, 0, 2))) == (2, 0, 2)


def test_markov_examples():
    assert enumerate_markov(30) == [(1, 1, 1), (2, 1, 1), (5, 2, 1), (13, 5, 1), (29, 5, 2)]
    assert enumerate_markov(1) == [(1, 1, 1)]
    assert is_markov((5, 2, 1)) and not is_markov((5, 2, 2))
    with pytest.raises(ValueError):
        enumerate_markov(0)


def test_markov_scan_matches_naive_loop():
    naive = sorted({tuple(sorted((a, b, c), reverse=True))
                    for a in range(1, 200) for b in range(1, a + 1) for c in range(1, b + 1)
                    if a * a + b * b + c * c == 3 * a * b * c})
    assert markov_scan(199) == naive == enumerate_markov(199)
    assert all(pairwise_coprime(t) for t in naive)


def test_orbit_graph_from_three_threes():
    nodes, edges = orbit_graph(Solution.of((1, 1, 1), (3, 3, 3)), 1)
    assert [n.x for n in nodes] == [(3, 3, 3), (6, 3, 3), (3, 6, 3), (3, 3, 6)]
    assert len(edges) == 3
    nodes, _ = orbit_graph(Solution.of((1, 1, 1), (3, 3, 3)), 2, moves="hurwitz")
    assert all(n.a == 0 for n in nodes)
    with pytest.raises(ValueError):
        orbit_graph(nodes[0], 1, moves="braid")
