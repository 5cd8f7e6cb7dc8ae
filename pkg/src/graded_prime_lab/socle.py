"""Submodule lattices of F_p-modules given by a finite operator set.

Vectors are rows and an operator acts by ``v @ op``.  The lattices of ideals,
graded ideals and invariant ideals are all of this shape, so one engine
serves all of them:

* ``spin`` gives the smallest invariant subspace containing some vectors;
* ``core`` gives the largest invariant subspace inside a subspace;
* ``minimal_submodule`` gives a certified minimal nonzero invariant subspace,
  found by MeatAxe descent with Norton's irreducibility criterion.

Primeness of such a lattice, with respect to a product where AB lies in both
A and B, reduces to a single minimal submodule A.  The lattice is prime iff the
largest submodule annihilated by A is zero.
"""
from __future__ import annotations

import random
from typing import Callable, List, Optional, Sequence

import numpy as np
import sympy

from .errors import CapExceeded
from .zmod import INT, howell, kernel

LINE_ENUM_CAP = 4096
NORTON_TRIES = 60


def _rref(A, p) -> np.ndarray:
    return howell(np.asarray(A, dtype=INT), p)


def _pivots(B) -> List[int]:
    return [int(np.flatnonzero(r)[0]) for r in B]


def _reduce_rows(X, B, piv, p):
    X = X.copy()
    for r, c in zip(B, piv):
        q = X[:, c]
        if q.any():
            X = (X - q[:, None] * r[None, :]) % p
    return X


def spin(X, ops: Sequence[np.ndarray], p: int, n: Optional[int] = None) -> np.ndarray:
    """RREF basis of the smallest op-invariant subspace containing rows of X."""
    X = np.asarray(X, dtype=INT)
    if n is None:
        n = X.shape[1]
    X = X.reshape(-1, n)
    B = _rref(X, p)
    if B.shape[0] == 0 or not ops:
        return B
    big = np.hstack([np.asarray(o, dtype=INT) for o in ops])
    frontier = B
    while frontier.shape[0]:
        imgs = _apply_all(frontier, big, len(ops), n, p)
        res = _reduce_rows(imgs, B, _pivots(B), p)
        res = res[np.any(res != 0, axis=1)]
        if res.shape[0] == 0:
            break
        frontier = _rref(res, p)
        B = _rref(np.vstack([B, frontier]), p)
        if B.shape[0] == n:
            break
    return B


def _apply_all(X, big, nops, n, p):
    Y = (X @ big) % p  # rows x (nops*n)
    return Y.reshape(X.shape[0], nops, n).reshape(-1, n)


def complement_checks(B, n, p) -> np.ndarray:
    """Matrix K (n x (n-d)) with w in rowspan(B) iff w @ K = 0."""
    if B.shape[0] == 0:
        return np.eye(n, dtype=INT)
    K = kernel(B.T, p)  # vectors y with B y = 0
    return K.rows.T.copy() if K.rows.shape[0] else np.zeros((n, 0), dtype=INT)


def core(B, ops: Sequence[np.ndarray], p: int, n: int) -> np.ndarray:
    """RREF basis of the largest op-invariant subspace inside rowspan(B)."""
    B = _rref(np.asarray(B, dtype=INT).reshape(-1, n), p)
    while B.shape[0]:
        K = complement_checks(B, n, p)
        if K.shape[1] == 0:
            return B
        blocks = [(B @ np.asarray(o, dtype=INT) % p) @ K % p for o in ops]
        M = np.hstack(blocks) if blocks else np.zeros((B.shape[0], 0), dtype=INT)
        if not M.any():
            return B
        C = kernel(M, p)
        if C.rows.shape[0] == B.shape[0]:
            return B
        B = _rref((C.rows @ B) % p, p) if C.rows.shape[0] else np.zeros((0, n), dtype=INT)
    return B


def intersect(B1, B2, p, n) -> np.ndarray:
    if B1.shape[0] == 0 or B2.shape[0] == 0:
        return np.zeros((0, n), dtype=INT)
    K = complement_checks(B2, n, p)
    if K.shape[1] == 0:
        return B1
    C = kernel((B1 @ K) % p, p)
    if C.rows.shape[0] == 0:
        return np.zeros((0, n), dtype=INT)
    return _rref((C.rows @ B1) % p, p)


# --- MeatAxe -------------------------------------------------------------

def _restrict(B, ops, p):
    piv = _pivots(B)
    return [((B @ o) % p)[:, piv] for o in ops]


def _poly_at(coeffs, T, p):
    """coeffs highest degree first."""
    d = T.shape[0]
    R = np.zeros((d, d), dtype=INT)
    I = np.eye(d, dtype=INT)
    for c in coeffs:
        R = (R @ T + c * I) % p
    return R


def _krylov_poly(T, v, p):
    """Coefficients (high first) of the monic least polynomial g with v g(T) = 0."""
    d = T.shape[0]
    rows = [v % p]
    for _ in range(d):
        rows.append((rows[-1] @ T) % p)
    K = np.array(rows[::-1], dtype=INT)  # row j is v T^(d-j)
    ker = kernel(K, p)
    c = ker.least_nonzero()
    # c indexes powers d..0; the last-row Howell vector has the most leading zeros
    c = [int(x) for x in c]
    while c and c[0] == 0:
        c.pop(0)
    inv = pow(c[0], -1, p)
    return [(x * inv) % p for x in c]


def _irreducible_factors(coeffs, p):
    x = sympy.Symbol("x")
    P = sympy.Poly(coeffs, x, modulus=p)
    _, facs = P.factor_list()
    out = []
    for f, _mult in facs:
        cs = [int(c) % p for c in f.all_coeffs()]
        inv = pow(cs[0], -1, p)
        out.append([(c * inv) % p for c in cs])
    out.sort(key=lambda cs: (len(cs), cs))
    return out


def _lines(N, p):
    """One nonzero vector per line of rowspan(N)."""
    r = N.shape[0]
    for lead in range(r):
        free = r - lead - 1
        for idx in range(p ** free):
            c = np.zeros(r, dtype=INT)
            c[lead] = 1
            t = idx
            for j in range(free):
                c[lead + 1 + j] = t % p
                t //= p
            yield (c @ N) % p


def _common_kernel(ops, d, p):
    if not ops:
        return np.eye(d, dtype=INT)
    M = np.hstack(ops)
    return kernel(M, p).rows


def _proper_sub(ops, d, p, rng, max_lines=LINE_ENUM_CAP):
    """A proper nonzero invariant subspace of F_p^d (RREF rows) or None if irreducible."""
    if d <= 1:
        return None
    ck = _common_kernel(ops, d, p)
    if ck.shape[0]:
        return _rref(ck[:1], p)
    opsT = [o.T.copy() for o in ops]
    ckT = _common_kernel(opsT, d, p)
    if ckT.shape[0]:
        return _annihilator(ckT[:1], d, p)
    v0 = np.zeros(d, dtype=INT)
    v0[-1] = 1
    S = spin(v0[None, :], ops, p, d)
    if S.shape[0] < d:
        return S
    if p ** d <= max_lines * (p - 1) + 1:
        for v in _lines(np.eye(d, dtype=INT), p):
            S = spin(v[None, :], ops, p, d)
            if S.shape[0] < d:
                return S
        return None
    nops = len(ops)
    for _ in range(NORTON_TRIES):
        T = np.zeros((d, d), dtype=INT)
        for o in ops:
            T = (T + rng.randrange(p) * o) % p
        for _ in range(min(3, nops)):
            a, b = rng.randrange(nops), rng.randrange(nops)
            T = (T + rng.randrange(1, p) * (ops[a] @ ops[b])) % p
        v = np.array([rng.randrange(p) for _ in range(d)], dtype=INT)
        if not v.any():
            continue
        g = _krylov_poly(T, v, p)
        best = None
        for f in _irreducible_factors(g, p):
            F = _poly_at(f, T, p)
            N = kernel(F, p).rows
            if N.shape[0] == 0:
                continue
            key = (N.shape[0] != len(f) - 1, N.shape[0])
            if best is None or key < best[0]:
                best = (key, f, F, N)
        if best is None:
            continue
        _, f, F, N = best
        deg = len(f) - 1
        if N.shape[0] == deg:
            S = spin(N[:1], ops, p, d)
            if S.shape[0] < d:
                return S
            Nt = kernel(F.T, p).rows
            Y = spin(Nt[:1], opsT, p, d)
            if Y.shape[0] < d:
                return _annihilator(Y, d, p)
            return None
        if p ** N.shape[0] <= max_lines * (p - 1) + 1:
            for v in _lines(N, p):
                S = spin(v[None, :], ops, p, d)
                if S.shape[0] < d:
                    return S
            Nt = kernel(F.T, p).rows
            for y in _lines(Nt, p):
                Y = spin(y[None, :], opsT, p, d)
                if Y.shape[0] < d:
                    return _annihilator(Y, d, p)
            return None
    raise CapExceeded(f"irreducibility test inconclusive in dimension {d}", witness={"dim": d, "p": p})


def _annihilator(Y, d, p):
    """{v : v . y = 0 for all rows y of Y}."""
    return _rref(kernel(Y.T, p).rows, p)


def minimal_submodule(B, ops: Sequence[np.ndarray], p: int, n: int, rng: Optional[random.Random] = None) -> np.ndarray:
    """Certified minimal nonzero invariant subspace inside the invariant subspace rowspan(B)."""
    if rng is None:
        rng = random.Random(0x5EED)
    B = _rref(np.asarray(B, dtype=INT).reshape(-1, n), p)
    if B.shape[0] == 0:
        raise ValueError("zero module has no minimal submodule")
    while True:
        d = B.shape[0]
        if d == 1:
            return B
        sub = _proper_sub(_restrict(B, ops, p), d, p, rng)
        if sub is None:
            return B
        B = _rref((sub @ B) % p, p)


def prime_test(n: int, ops, p: int, right_ann: Callable[[np.ndarray], np.ndarray], rng=None):
    """(is_prime, witness) for the lattice of op-invariant subspaces of F_p^n.

    ``right_ann(A)`` returns a basis of {x : a x = 0 for all rows a of A}.
    The witness is a pair of row vectors (a, b) whose generated submodules
    multiply to zero.
    """
    if n == 0:
        return False, None
    A = minimal_submodule(np.eye(n, dtype=INT), ops, p, n, rng)
    R = core(right_ann(A), ops, p, n)
    if R.shape[0] == 0:
        return True, None
    return False, (A[-1].copy(), R[-1].copy())


def semiprime_test(n: int, ops, p: int, ann2: Callable[[np.ndarray], np.ndarray],
                   square_is_zero: Callable[[np.ndarray], bool], rng=None):
    """(is_semiprime, witness a) by peeling minimal submodules off.

    ``ann2(A)`` is the two-sided annihilator of A.  Every minimal submodule
    other than A lies in it, and A itself does not when A^2 != 0.
    """
    K = np.eye(n, dtype=INT)
    while K.shape[0]:
        A = minimal_submodule(K, ops, p, n, rng)
        if square_is_zero(A):
            return False, A[-1].copy()
        K = core(intersect(K, ann2(A), p, n), ops, p, n)
    return True, None
