"""Linear algebra over Z/m in row convention.

Submodules of (Z/m)^k are stored in Howell normal form, which is unique per
additive subgroup.  Equality is therefore an array comparison, and membership
is a reduction against the pivot rows.  Every element is an int64 row vector
with entries in [0, m).
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import CapExceeded

INT = np.int64


def xgcd(a: int, b: int):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def unit_normalizer(a: int, m: int) -> int:
    """A unit u of Z/m with u*a = gcd(a, m) (mod m)."""
    g = gcd(a, m)
    mp = m // g
    if mp == 1:
        return 1
    u = pow((a // g) % mp, -1, mp)
    while gcd(u, m) != 1:
        u += mp
    return u % m


def is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_factors(n: int) -> list:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def as_matrix(rows, k: int, m: int) -> np.ndarray:
    a = np.asarray(rows, dtype=INT)
    if a.size == 0:
        return np.zeros((0, k), dtype=INT)
    return np.mod(a.reshape(-1, k), m)


def _rref_field(A: np.ndarray, p: int) -> np.ndarray:
    A = A.copy()
    n, k = A.shape
    r = 0
    while r < n:
        live = np.flatnonzero(A[r:].any(axis=0))
        if live.size == 0:
            break
        c = int(live[0])
        i = r + int(np.flatnonzero(A[r:, c])[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - col[hit, None] * A[r][None, :]) % p
        r += 1
    return A[:r]


def _howell_prime_power(A: np.ndarray, m: int) -> np.ndarray:
    # over Z/p^e the pivot of least valuation divides its whole column
    A = A[np.any(A != 0, axis=1)].copy()
    r, cols = 0, []
    while r < A.shape[0]:
        live = np.flatnonzero(A[r:].any(axis=0))
        if live.size == 0:
            break
        c = int(live[0])
        nz = r + np.flatnonzero(A[r:, c])
        i = int(nz[np.argmin(np.gcd(A[nz, c], m))])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * unit_normalizer(int(A[r, c]), m)) % m
        d = int(A[r, c])
        if r + 1 < A.shape[0]:
            q = A[r + 1:, c] // d
            A[r + 1:] = (A[r + 1:] - q[:, None] * A[r][None, :]) % m
        if d != 1:
            extra = (A[r] * (m // d)) % m
            if extra.any():
                A = np.vstack([A, extra[None, :]])
        cols.append(c)
        r += 1
    H = A[:r]
    for i, c in enumerate(cols):
        if i:
            q = H[:i, c] // H[i, c]
            H[:i] = (H[:i] - q[:, None] * H[i][None, :]) % m
    return H


def howell(A, m: int) -> np.ndarray:
    """Howell normal form of the row span of A over Z/m (zero rows dropped)."""
    A = np.mod(np.asarray(A, dtype=INT), m)
    if A.ndim != 2:
        raise ValueError("expected a 2d array")
    n, k = A.shape
    if is_prime_int(m):
        return _rref_field(A, m)
    if len(prime_factors(m)) == 1:
        return _howell_prime_power(A, m)
    pool = A[np.any(A != 0, axis=1)]
    piv_rows, piv_cols = [], []
    for c in range(k):
        if pool.shape[0] == 0:
            break
        col = pool[:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        gs = np.gcd(col[nz], m)
        i0 = nz[int(np.argmin(gs))]
        piv = pool[i0].copy()
        pool = np.delete(pool, i0, axis=0)
        u = unit_normalizer(int(piv[c]), m)
        piv = (piv * u) % m
        d = int(piv[c])
        # only happens for moduli that are not prime powers
        bad = np.nonzero(pool[:, c] % d)[0]
        while bad.size:
            r = bad[0]
            row = pool[r]
            b = int(row[c])
            g, s, t = xgcd(d, b)
            newp = (s * piv + t * row) % m
            pool[r] = ((b // g) * piv - (d // g) * row) % m
            u = unit_normalizer(int(newp[c]), m)
            piv = (newp * u) % m
            d = int(piv[c])
            bad = np.nonzero(pool[:, c] % d)[0]
        if pool.shape[0]:
            q = pool[:, c] // d
            pool = (pool - q[:, None] * piv[None, :]) % m
        if d != 1:
            extra = (piv * (m // d)) % m
            if extra.any():
                pool = np.vstack([pool, extra[None, :]])
        pool = pool[np.any(pool != 0, axis=1)]
        piv_rows.append(piv)
        piv_cols.append(c)
    if not piv_rows:
        return np.zeros((0, k), dtype=INT)
    H = np.array(piv_rows, dtype=INT)
    for i, c in enumerate(piv_cols):
        d = H[i, c]
        if i:
            q = H[:i, c] // d
            H[:i] = (H[:i] - q[:, None] * H[i][None, :]) % m
    return H


def _pivot_col(row: np.ndarray) -> int:
    return int(np.flatnonzero(row)[0])


class Submodule:
    """Additive subgroup of (Z/m)^k, canonical via Howell form."""

    __slots__ = ("m", "k", "rows", "pivots", "_key")

    def __init__(self, rows: np.ndarray, m: int, k: int, canonical: bool = False):
        self.m, self.k = m, k
        R = as_matrix(rows, k, m)
        self.rows = R if canonical else howell(R, m)
        self.rows.setflags(write=False)
        self.pivots = [_pivot_col(r) for r in self.rows]
        self._key = None

    @classmethod
    def zero(cls, m: int, k: int) -> "Submodule":
        return cls(np.zeros((0, k), dtype=INT), m, k, canonical=True)

    @classmethod
    def full(cls, m: int, k: int) -> "Submodule":
        return cls(np.eye(k, dtype=INT), m, k, canonical=True)

    # identity and ordering
    def key(self):
        if self._key is None:
            self._key = (self.m, self.k, self.rows.shape[0], self.rows.tobytes())
        return self._key

    def __eq__(self, other):
        return isinstance(other, Submodule) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Submodule(m={self.m}, k={self.k}, size={self.size()}, gens={self.rows.tolist()})"

    def is_zero(self) -> bool:
        return self.rows.shape[0] == 0

    def size(self) -> int:
        s = 1
        for r, c in zip(self.rows, self.pivots):
            s *= self.m // int(r[c])
        return s

    def orders(self):
        return [self.m // int(r[c]) for r, c in zip(self.rows, self.pivots)]

    # membership
    def reduce(self, v) -> np.ndarray:
        v = np.mod(np.asarray(v, dtype=INT), self.m).copy()
        for r, c in zip(self.rows, self.pivots):
            d = int(r[c])
            q = int(v[c]) // d
            if q:
                v = (v - q * r) % self.m
        return v

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def contains_all(self, X) -> bool:
        X = as_matrix(X, self.k, self.m)
        if X.shape[0] == 0:
            return True
        for r, c in zip(self.rows, self.pivots):
            q = X[:, c] // int(r[c])
            X = (X - q[:, None] * r[None, :]) % self.m
        return not X.any()

    def __le__(self, other: "Submodule") -> bool:
        return other.contains_all(self.rows)

    def __add__(self, other: "Submodule") -> "Submodule":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        return Submodule(np.vstack([self.rows, other.rows]), self.m, self.k)

    def add_rows(self, X) -> "Submodule":
        X = as_matrix(X, self.k, self.m)
        return Submodule(np.vstack([self.rows, X]), self.m, self.k)

    def intersect(self, other: "Submodule") -> "Submodule":
        if self.is_zero() or other.is_zero():
            return Submodule.zero(self.m, self.k)
        if self <= other:
            return self
        if other <= self:
            return other
        U, V = self.rows, other.rows
        top = np.hstack([U, U])
        bot = np.hstack([V, np.zeros_like(V)])
        H = howell(np.vstack([top, bot]), self.m)
        keep = ~np.any(H[:, : self.k] != 0, axis=1)
        return Submodule(H[keep, self.k:], self.m, self.k)

    def least_nonzero(self) -> Optional[np.ndarray]:
        """Lexicographically least nonzero element (the last Howell row)."""
        if self.is_zero():
            return None
        return self.rows[-1].copy()

    def elements(self, cap: Optional[int] = None) -> Iterator[np.ndarray]:
        """All elements, in a fixed deterministic order."""
        n = self.size()
        if cap is not None and n > cap:
            raise CapExceeded(f"submodule has {n} elements, cap is {cap}", witness={"size": n, "cap": cap})
        if self.is_zero():
            yield np.zeros(self.k, dtype=INT)
            return
        orders = self.orders()
        R = self.rows
        coeff = [0] * len(orders)
        while True:
            yield (np.asarray(coeff, dtype=INT) @ R) % self.m
            i = len(orders) - 1
            while i >= 0:
                coeff[i] += 1
                if coeff[i] < orders[i]:
                    break
                coeff[i] = 0
                i -= 1
            if i < 0:
                return

    def element_matrix(self, cap: Optional[int] = None) -> np.ndarray:
        n = self.size()
        if cap is not None and n > cap:
            raise CapExceeded(f"submodule has {n} elements, cap is {cap}", witness={"size": n, "cap": cap})
        if self.is_zero():
            return np.zeros((1, self.k), dtype=INT)
        grids = np.meshgrid(*[np.arange(o, dtype=INT) for o in self.orders()], indexing="ij")
        coeff = np.stack([g.ravel() for g in grids], axis=1)
        return (coeff @ self.rows) % self.m


def span(gens: Iterable, m: int, k: int) -> Submodule:
    return Submodule(as_matrix(list(gens) if not isinstance(gens, np.ndarray) else gens, k, m), m, k)


def kernel(M, m: int) -> Submodule:
    """{x : x M = 0} for an n x l matrix M over Z/m."""
    M = np.mod(np.asarray(M, dtype=INT), m)
    n, l = M.shape
    if n == 0:
        return Submodule.zero(m, 0)
    H = howell(np.hstack([M, np.eye(n, dtype=INT)]), m)
    keep = ~np.any(H[:, :l] != 0, axis=1)
    return Submodule(H[keep, l:], m, n)


def solve(M, b, m: int) -> Optional[np.ndarray]:
    """Some x with x M = b over Z/m, or None."""
    M = np.mod(np.asarray(M, dtype=INT), m)
    n, l = M.shape
    if n == 0:
        return np.zeros(0, dtype=INT) if not np.any(np.mod(b, m)) else None
    H = howell(np.hstack([M, np.eye(n, dtype=INT)]), m)
    v = np.concatenate([np.mod(np.asarray(b, dtype=INT), m), np.zeros(n, dtype=INT)])
    for r in H:
        nzc = np.flatnonzero(r)
        c = int(nzc[0])
        if c >= l:
            break
        d = int(r[c])
        if v[c] % d:
            return None
        q = int(v[c]) // d
        if q:
            v = (v - q * r) % m
    if v[:l].any():
        return None
    return (-v[l:]) % m


def image(X, M, m: int) -> np.ndarray:
    return (np.asarray(X, dtype=INT) @ np.asarray(M, dtype=INT)) % m
