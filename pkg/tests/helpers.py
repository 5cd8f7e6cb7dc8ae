"""Brute-force oracles shared by the test modules.

These work on explicit element lists and ring multiplication only, so they
stay independent of the lattice machinery they are used to check.
"""
from __future__ import annotations

import functools
import itertools
from math import gcd

import numpy as np

from graded_prime_lab.corpus import generate_cases
from graded_prime_lab.groups import FiniteGroup


def units(m):
    return [u for u in range(1, m) if gcd(u, m) == 1] or [1]


def is_normalized(a, m):
    """a is the lexicographically least of its unit multiples."""
    t = tuple(int(x) for x in a)
    return all(tuple(int(x) for x in (u * a) % m) >= t for u in units(m))


def all_elements(R):
    return np.array(list(itertools.product(range(R.m), repeat=R.k)), dtype=np.int64)


def kills(R, a, b) -> bool:
    """a S b = 0 and a b = 0, by multiplication against the basis."""
    basis = np.eye(R.k, dtype=np.int64)
    if R.mul(a, b).any():
        return False
    aS = R.products(np.asarray(a)[None, :], basis)
    return not R.products(aS, np.asarray(b)[None, :]).any()


def prime_witness_ok(R, w) -> bool:
    a, b = (np.asarray(v, dtype=np.int64) % R.m for v in w)
    return bool(a.any()) and bool(b.any()) and ideal_product_zero(R, a, b)


def ideal_product_zero(R, a, b) -> bool:
    """ideal(a) ideal(b) = 0 with ideal(x) = Zx + Sx + xS + SxS, checked elementwise on spanning sets."""
    basis = np.eye(R.k, dtype=np.int64)

    def spanning(x):
        x = x[None, :]
        Sx = R.products(basis, x)
        xS = R.products(x, basis)
        SxS = R.products(Sx, basis)
        return np.vstack([x, Sx, xS, SxS])

    return not R.products(spanning(a), spanning(b)).any()


def brute_prime(R, cap=1 << 18):
    """(verdict, witness) from the scan of normalized nonzero a against the annihilator of ideal(a)."""
    if R.m ** R.k > cap:
        raise ValueError("ring too large for the brute scan")
    for a in R.elements(cap):
        if not a.any() or not is_normalized(a, R.m):
            continue
        Ann = R.right_annihilator(R.principal_ideal(a))
        if not Ann.is_zero():
            b = Ann.least_nonzero()
            assert ideal_product_zero(R, a, b)
            return False, ([int(x) for x in a], [int(x) for x in b])
    return True, None


def brute_prime_pairs(R):
    """Pair scan of all nonzero a, b with a S b = 0; only for tiny rings."""
    E = [e for e in all_elements(R) if e.any()]
    for a in E:
        for b in E:
            if kills(R, a, b):
                return False
    return True


def ideal_subspaces(R, ambient_rows, ops):
    """All additive subgroups of a small ambient module that are closed under the given matrices."""
    from graded_prime_lab.zmod import span
    m, k = R.m, R.k
    amb = span(ambient_rows, m, k)
    elems = [tuple(int(x) for x in v) for v in amb.element_matrix()]
    seen = {span([], m, k)}
    frontier = list(seen)
    while frontier:
        new = []
        for U in frontier:
            for v in elems:
                if U.contains(v):
                    continue
                W = U + span([v], m, k)
                while True:
                    imgs = [(W.rows @ op) % m for op in ops] if not W.is_zero() else []
                    W2 = W
                    for im in imgs:
                        W2 = W2 + span(im, m, k)
                    if W2 == W:
                        break
                    W = W2
                if W not in seen:
                    seen.add(W)
                    new.append(W)
        frontier = new
    return list(seen)


@functools.lru_cache(maxsize=None)
def corpus():
    cases, skipped = generate_cases()
    return tuple(cases), tuple(map(repr, skipped))


def finite_cases():
    return [c for c in corpus()[0] if isinstance(c.S.group, FiniteGroup)]


def z_cases():
    return [c for c in corpus()[0] if not isinstance(c.S.group, FiniteGroup)]
