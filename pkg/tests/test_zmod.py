import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from graded_prime_lab.zmod import Submodule, howell, kernel, prime_factors, solve, span, unit_normalizer, xgcd


def brute_span(gens, m, k):
    S = {(0,) * k}
    frontier = list(S)
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % m for a, b in zip(v, g))
                if w not in S:
                    S.add(w)
                    new.append(w)
        frontier = new
    return S


def as_sub(gens, m, k):
    return Submodule(np.array(gens, dtype=np.int64).reshape(-1, k), m, k)


MODULI = [2, 3, 4, 6, 8, 9, 12, 16, 25, 27]


def test_submodule_against_enumeration():
    rng = random.Random(1)
    for _ in range(400):
        m, k, n = rng.choice(MODULI), rng.randint(1, 3), rng.randint(0, 4)
        gens = [[rng.randrange(m) for _ in range(k)] for _ in range(n)]
        U = as_sub(gens, m, k)
        B = brute_span(gens, m, k)
        assert {tuple(x) for x in U.element_matrix()} == B
        assert U.size() == len(B)
        v = [rng.randrange(m) for _ in range(k)]
        assert U.contains(v) == (tuple(v) in B)
        lex = min((x for x in B if any(x)), default=None)
        ln = U.least_nonzero()
        assert (lex is None and ln is None) or tuple(ln) == lex
        if gens:
            shuffled = gens[::-1] + [[(a + b) % m for a, b in zip(gens[0], gens[-1])]]
            assert as_sub(shuffled, m, k) == U


def test_kernel_solve_intersect():
    rng = random.Random(2)
    for _ in range(200):
        m, k, n = rng.choice([2, 3, 4, 6, 8, 9]), rng.randint(1, 3), rng.randint(1, 3)
        gens = [[rng.randrange(m) for _ in range(k)] for _ in range(n)]
        M = np.array(gens, dtype=np.int64)
        K = kernel(M, m)
        KB = {x for x in itertools.product(range(m), repeat=n) if not np.any((np.array(x) @ M) % m)}
        assert {tuple(x) for x in K.element_matrix()} == KB
        v = [rng.randrange(m) for _ in range(k)]
        x = solve(M, v, m)
        B = brute_span(gens, m, k)
        assert (x is None) == (tuple(v) not in B)
        if x is not None:
            assert np.array_equal((x @ M) % m, np.array(v) % m)
        gens2 = [[rng.randrange(m) for _ in range(k)] for _ in range(rng.randint(0, 3))]
        V = as_sub(gens2, m, k)
        U = as_sub(gens, m, k)
        assert {tuple(x) for x in U.intersect(V).element_matrix()} == B & brute_span(gens2, m, k)


def test_arithmetic_helpers():
    for a, b in [(12, 18), (7, 5), (0, 9), (9, 0)]:
        g, s, t = xgcd(a, b)
        assert g == np.gcd(a, b) and s * a + t * b == g
    assert prime_factors(360) == [2, 3, 5]
    for m in (4, 9, 12):
        for a in range(1, m):
            u = unit_normalizer(a, m)
            assert np.gcd(u, m) == 1
            assert (u * a) % m == np.gcd(a, m)


def test_howell_is_canonical_for_equal_spans():
    A = np.array([[2, 0], [0, 2], [2, 2]])
    B = np.array([[2, 2], [0, 2]])
    assert np.array_equal(howell(A, 4), howell(B, 4))


vec_lists = st.integers(1, 3).flatmap(lambda k: st.tuples(
    st.just(k), st.sampled_from([2, 3, 4, 6, 8, 9]),
    st.lists(st.lists(st.integers(0, 30), min_size=k, max_size=k), max_size=4)))


@settings(max_examples=80, deadline=None)
@given(vec_lists)
def test_span_is_closed_under_addition(data):
    k, m, gens = data
    U = span(gens, m, k) if gens else Submodule.zero(m, k)
    E = U.element_matrix()
    assert len({tuple(x) for x in E}) == U.size()
    for a in E[:8]:
        for b in E[:8]:
            assert U.contains((a + b) % m)
    for g in gens:
        assert U.contains(np.array(g) % m)


@settings(max_examples=60, deadline=None)
@given(vec_lists, vec_lists)
def test_sum_and_intersection_sizes(d1, d2):
    k, m, g1 = d1
    _, _, g2 = d2
    g2 = [(row * k)[:k] for row in g2]
    U, V = span(g1, m, k), span(g2, m, k)
    # |U + V| |U n V| = |U| |V| for finite abelian groups
    assert (U + V).size() * U.intersect(V).size() == U.size() * V.size()
    assert U.intersect(V) <= U and U <= U + V
