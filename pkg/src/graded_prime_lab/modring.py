"""Finite, possibly non-unital rings given by structure constants over Z/m.

A ring of rank k is the free module (Z/m)^k with b_i b_j = sum_t C[i, j, t] b_t.
Elements are int64 row vectors.  With L_g the k x k matrix whose row j is
g b_j, left multiplication by g is ``x @ L_g``; R_g plays the same role on the
right.  Submodules use the canonical Howell form from :mod:`zmod`.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from . import socle
from .errors import BadUnit, CapExceeded, InputError, NotAssociative
from .zmod import INT, Submodule, as_matrix, is_prime_int, kernel, prime_factors, solve

ELEMENT_CAP = 2 ** 20
IDEAL_CAP = 4096
EXHAUSTIVE_CAP = 2 ** 12


class FiniteRing:
    def __init__(self, m: int, constants, unit=None, labels: Optional[Sequence[str]] = None, check: bool = True):
        if int(m) < 2:
            raise InputError("modulus must be at least 2")
        self.m = m = int(m)
        C = np.mod(np.asarray(constants, dtype=INT), m)
        if C.ndim != 3 or C.shape[0] != C.shape[1] or C.shape[1] != C.shape[2] or C.shape[0] < 1:
            raise InputError("structure constants must have shape (k, k, k) with k >= 1")
        self.k = k = C.shape[0]
        self.C = C
        self.C.setflags(write=False)
        self.C2 = C.reshape(k, k * k)
        # sparse copies for x -> x*(.) and x -> (.)*x; structure constants are mostly zero
        self._LT = sparse.csr_matrix(self.C2.T)
        self._RT = sparse.csr_matrix(C.transpose(1, 0, 2).reshape(k, k * k).T)
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(k)]
        if len(self.labels) != k:
            raise InputError("label count does not match rank")
        if check:
            self._check_associative()
        self.declared_unit = None
        if unit is not None:
            u = np.mod(np.asarray(unit, dtype=INT), m)
            if u.shape != (k,):
                raise InputError("unit vector has the wrong length")
            I = np.eye(k, dtype=INT)
            L, R = self.left_op(u), self.right_op(u)
            for i in range(k):
                if not np.array_equal(L[i], I[i]) or not np.array_equal(R[i], I[i]):
                    raise BadUnit(f"declared unit fails on basis element {self.labels[i]}", witness=i)
            self.declared_unit = u
        self._ops = None

    # -- validation -------------------------------------------------------
    def _check_associative(self):
        bad = first_associativity_failure(self.C, self.m)
        if bad is not None:
            i, j, l = bad
            raise NotAssociative(
                f"(b{i} b{j}) b{l} != b{i} (b{j} b{l})", witness=[int(i), int(j), int(l)])

    # -- arithmetic -------------------------------------------------------
    def zero(self) -> np.ndarray:
        return np.zeros(self.k, dtype=INT)

    def basis(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def vec(self, x) -> np.ndarray:
        v = np.mod(np.asarray(x, dtype=INT), self.m)
        if v.shape != (self.k,):
            raise InputError(f"element must have {self.k} coordinates")
        return v

    def mul(self, x, y) -> np.ndarray:
        t = self._lmul(np.asarray(x, dtype=INT)[None, :])
        return (np.asarray(y, dtype=INT) @ t.reshape(self.k, self.k)) % self.m

    def _lmul(self, X) -> np.ndarray:
        return np.asarray(self._LT.dot(X.T).T) % self.m

    def left_op(self, g) -> np.ndarray:
        """Matrix of x -> g x."""
        return self._lmul(np.asarray(g, dtype=INT)[None, :]).reshape(self.k, self.k)

    def right_op(self, g) -> np.ndarray:
        """Matrix of x -> x g."""
        g = np.asarray(g, dtype=INT)[None, :]
        return (np.asarray(self._RT.dot(g.T).T) % self.m).reshape(self.k, self.k)

    def basis_ops(self) -> List[np.ndarray]:
        """Left then right multiplication by each basis element."""
        if self._ops is None:
            self._ops = [self.C[i] for i in range(self.k)] + [np.ascontiguousarray(self.C[:, i, :]) for i in range(self.k)]
        return self._ops

    def products(self, X, Y) -> np.ndarray:
        """All pairwise products x y for rows x of X and y of Y, stacked."""
        X, Y = as_matrix(X, self.k, self.m), as_matrix(Y, self.k, self.m)
        if X.shape[0] == 0 or Y.shape[0] == 0:
            return np.zeros((0, self.k), dtype=INT)
        T = self._lmul(X).reshape(X.shape[0], self.k, self.k)
        P = np.einsum("bj,ajt->abt", Y, T) % self.m
        return P.reshape(-1, self.k)

    def size(self) -> int:
        return self.m ** self.k

    def elements(self, cap: int = ELEMENT_CAP) -> Iterator[np.ndarray]:
        """All elements in lexicographic order of coordinates."""
        if self.size() > cap:
            raise CapExceeded(f"ring has {self.m}^{self.k} elements, cap is {cap}", witness={"size": self.size(), "cap": cap})
        for t in itertools.product(range(self.m), repeat=self.k):
            yield np.array(t, dtype=INT)

    # -- submodules and ideals -------------------------------------------
    def submodule(self, X) -> Submodule:
        return Submodule(as_matrix(X, self.k, self.m), self.m, self.k)

    def full(self) -> Submodule:
        return Submodule.full(self.m, self.k)

    def zero_sub(self) -> Submodule:
        return Submodule.zero(self.m, self.k)

    def principal_ideal(self, a) -> Submodule:
        """Span of a, b_i a, a b_j and b_i a b_j."""
        a = self.vec(a)
        La, Ra = self.left_op(a), self.right_op(a)   # rows: a b_j, b_i a
        both = self.products(Ra, np.eye(self.k, dtype=INT))
        return self.submodule(np.vstack([a[None, :], La, Ra, both]))

    def ideal(self, X) -> Submodule:
        """Two-sided ideal generated by the rows of X."""
        return spin_module(self.submodule(X), self.basis_ops())

    def is_ideal(self, U: Submodule) -> bool:
        return all(U.contains_all((U.rows @ op) % self.m) for op in self.basis_ops()) if not U.is_zero() else True

    def product(self, U: Submodule, V: Submodule) -> Submodule:
        return self.submodule(self.products(U.rows, V.rows))

    def right_annihilator(self, U: Submodule, within: Optional[Submodule] = None) -> Submodule:
        """{x : u x = 0 for u in U}."""
        return self._ann(U, within, left=False)

    def left_annihilator(self, U: Submodule, within: Optional[Submodule] = None) -> Submodule:
        """{x : x u = 0 for u in U}."""
        return self._ann(U, within, left=True)

    def annihilator(self, U: Submodule, side: str = "right") -> Submodule:
        if side not in ("left", "right"):
            raise InputError("side must be 'left' or 'right'")
        return self._ann(U, None, left=side == "left")

    def _ann(self, U, within, left):
        if U.is_zero():
            return within if within is not None else self.full()
        mats = [self.right_op(u) if left else self.left_op(u) for u in U.rows]
        M = np.hstack(mats)
        if within is None:
            return Submodule(kernel(M, self.m).rows, self.m, self.k)
        if within.is_zero():
            return within
        B = within.rows
        Kc = kernel((B @ M) % self.m, self.m)
        return self.submodule((Kc.rows @ B) % self.m) if Kc.rows.shape[0] else self.zero_sub()

    # -- unit, s-unitality -----------------------------------------------
    def one_sided_identity(self, side: str, V: Optional[np.ndarray] = None):
        """Tominaga's induction: an element e with e v = v (side 'left') or v e = v for all rows v of V.

        Returns (e, None) on success and (None, w) with w not in S w (resp. w S)
        on failure; such a w certifies that S is not s-unital on that side.
        """
        V = np.eye(self.k, dtype=INT) if V is None else as_matrix(V, self.k, self.m)
        e = self.zero()
        for v in V:
            ev = self.mul(e, v) if side == "left" else self.mul(v, e)
            w = (v - ev) % self.m
            if not w.any():
                continue
            M = self.right_op(w) if side == "left" else self.left_op(w)
            e2 = solve(M, w, self.m)
            if e2 is None:
                return None, w
            if side == "left":
                e = (e + e2 - self.mul(e2, e)) % self.m
            else:
                e = (e + e2 - self.mul(e, e2)) % self.m
        return e, None

    def unit(self) -> Optional[np.ndarray]:
        if self.declared_unit is not None:
            return self.declared_unit
        eL, _ = self.one_sided_identity("left")
        eR, _ = self.one_sided_identity("right")
        if eL is None or eR is None:
            return None
        return eL  # e_L = e_L e_R = e_R

    def is_unital(self) -> bool:
        return self.unit() is not None

    def reduce_mod(self, p: int) -> "FiniteRing":
        if self.m % p:
            raise InputError(f"{p} does not divide the modulus {self.m}")
        u = None if self.declared_unit is None else self.declared_unit % p
        return FiniteRing(p, self.C % p, unit=u, labels=self.labels, check=False)

    def __repr__(self):
        return f"FiniteRing(m={self.m}, k={self.k})"

    def __eq__(self, other):
        return isinstance(other, FiniteRing) and self.m == other.m and np.array_equal(self.C, other.C)

    def __hash__(self):
        return hash((self.m, self.C.tobytes()))


def first_associativity_failure(C, m) -> Optional[Tuple[int, int, int]]:
    """Least triple (i, j, l) with (b_i b_j) b_l != b_i (b_j b_l), or None."""
    k = C.shape[0]
    C = np.asarray(C, dtype=INT)
    A = sparse.csr_matrix(C.reshape(k * k, k))                        # ((i,j), s)
    B = sparse.csr_matrix(C.reshape(k, k * k))                        # (s, (l,t))
    D = sparse.csr_matrix(C.transpose(1, 0, 2).reshape(k, k * k))     # (s, (i,t)) = C[i,s,t]
    left = (A @ B).tocoo()    # ((i,j),(l,t))
    right = (A @ D).tocoo()   # ((j,l),(i,t))
    L = {}
    for r, c, v in zip(left.row, left.col, left.data):
        v = int(v) % m
        if v:
            i, j = divmod(int(r), k)
            l, t = divmod(int(c), k)
            L[(i, j, l, t)] = v
    R = {}
    for r, c, v in zip(right.row, right.col, right.data):
        v = int(v) % m
        if v:
            j, l = divmod(int(r), k)
            i, t = divmod(int(c), k)
            R[(i, j, l, t)] = v
    bad = [key[:3] for key in set(L) | set(R) if L.get(key, 0) != R.get(key, 0)]
    return min(bad) if bad else None


def spin_module(U: Submodule, ops: Sequence[np.ndarray]) -> Submodule:
    """Smallest op-invariant submodule containing U over Z/m."""
    m, k = U.m, U.k
    if U.is_zero() or not ops:
        return U
    big = np.hstack(ops)
    while True:
        imgs = ((U.rows @ big) % m).reshape(-1, k)
        if U.contains_all(imgs):
            return U
        U = U.add_rows(imgs)


def core_module(U: Submodule, ops: Sequence[np.ndarray]) -> Submodule:
    """Largest op-invariant submodule inside U over Z/m.

    Z/m is self-injective, so w lies in U iff w y = 0 for every y with U y = 0;
    each round keeps the x = cB whose images stay in U.
    """
    m, k = U.m, U.k
    while not U.is_zero():
        B = U.rows
        Kc = kernel(B.T, m).rows.T
        if Kc.shape[1] == 0:
            return U
        M = np.hstack([((B @ op) % m) @ Kc % m for op in ops])
        if not M.any():
            return U
        cs = kernel(M, m).rows
        new = Submodule((cs @ B) % m, m, k) if cs.shape[0] else Submodule.zero(m, k)
        if new == U:
            return U
        U = new
    return U


# --- presets ------------------------------------------------------------

def zmod(m: int) -> FiniteRing:
    return FiniteRing(m, [[[1]]], unit=[1], labels=["1"])


def zero_ring_on(m: int, k: int = 1, labels=None) -> FiniteRing:
    """Rank-k module with all products zero."""
    return FiniteRing(m, np.zeros((k, k, k), dtype=INT), labels=labels)


def matrix_ring(n: int, R: FiniteRing) -> FiniteRing:
    """M_n(R); basis index (i*n + j)*k + s stands for e_ij b_s."""
    k, m = R.k, R.m
    K = n * n * k
    C = np.zeros((K, K, K), dtype=INT)
    for i, j, l in itertools.product(range(n), repeat=3):
        for s in range(k):
            for t in range(k):
                a = (i * n + j) * k + s
                b = (j * n + l) * k + t
                base = (i * n + l) * k
                C[a, b, base: base + k] = R.C[s, t]
    unit = None
    u = R.unit()
    if u is not None:
        unit = np.zeros(K, dtype=INT)
        for i in range(n):
            unit[(i * n + i) * k: (i * n + i) * k + k] = u
    if k == 1:
        labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    else:
        labels = [f"e{i + 1}{j + 1}*{R.labels[s]}" for i in range(n) for j in range(n) for s in range(k)]
    return FiniteRing(m, C, unit=unit, labels=labels, check=False)


def direct_sum(parts: Sequence[FiniteRing]) -> FiniteRing:
    if not parts:
        raise InputError("direct sum needs at least one part")
    m = parts[0].m
    if any(P.m != m for P in parts):
        raise InputError("direct sum parts must share one modulus")
    K = sum(P.k for P in parts)
    C = np.zeros((K, K, K), dtype=INT)
    off, labels, units = 0, [], []
    for idx, P in enumerate(parts):
        C[off: off + P.k, off: off + P.k, off: off + P.k] = P.C
        labels += [f"{lab}_{idx}" for lab in P.labels] if len(parts) > 1 else list(P.labels)
        units.append(P.unit())
        off += P.k
    unit = None if any(u is None for u in units) else np.concatenate(units)
    return FiniteRing(m, C, unit=unit, labels=labels, check=False)


def subring_on(R: FiniteRing, X) -> FiniteRing:
    """The ring structure on a free direct summand spanned by the rows of X.

    X must be closed under multiplication and have rows that form part of a
    basis (checked).  Used for rings like 2Z/4Z, which is not free; callers
    needing those use explicit constants instead.
    """
    X = as_matrix(X, R.k, R.m)
    n = X.shape[0]
    C = np.zeros((n, n, n), dtype=INT)
    for a in range(n):
        for b in range(n):
            prod = R.mul(X[a], X[b])
            c = solve(X, prod, R.m)
            if c is None:
                raise InputError("rows are not closed under multiplication")
            C[a, b] = c
    return FiniteRing(R.m, C)


# --- primeness ----------------------------------------------------------

@dataclass
class PrimeResult:
    verdict: bool
    witness: Optional[Tuple[List[int], List[int]]] = None
    method: str = ""
    bounds: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict


def _vec_list(v) -> List[int]:
    return [int(x) for x in v]


def _lift_witness(v, m, p):
    """Image of a vector over F_p in the p-primary part of (Z/m)^k."""
    return (np.asarray(v, dtype=INT) * (m // p)) % m


def structural_pair(m: int, base: np.ndarray):
    """(u b, v b) with u v = 0 mod m, for composite m and a free basis vector b."""
    p = prime_factors(m)[0]
    if (m // p) % p == 0:
        u = v = m // p
    else:
        q = prime_factors(m)[1]
        u, v = m // p, m // q
    return (u * base) % m, (v * base) % m


def is_prime(S: FiniteRing, method: str = "auto", cap: int = ELEMENT_CAP, rng=None) -> PrimeResult:
    if method == "exhaustive":
        return prime_exhaustive(S, cap)
    if method not in ("auto", "socle"):
        raise InputError(f"unknown primeness method {method!r}")
    if not is_prime_int(S.m):
        a, b = structural_pair(S.m, S.basis(0))
        return PrimeResult(False, (_vec_list(a), _vec_list(b)), "torsion")
    p = S.m
    ok, wit = socle.prime_test(S.k, S.basis_ops(), p, lambda A: _rann_rows(S, A), rng)
    if ok:
        return PrimeResult(True, None, "minimal_ideal")
    return PrimeResult(False, (_vec_list(wit[0]), _vec_list(wit[1])), "minimal_ideal")


def _rann_rows(S, A):
    return S.right_annihilator(S.submodule(A)).rows


def _lann_rows(S, A):
    return S.left_annihilator(S.submodule(A)).rows


def _ann2_rows(S, A):
    U = S.submodule(A)
    return S.right_annihilator(U).intersect(S.left_annihilator(U)).rows


def prime_exhaustive(S: FiniteRing, cap: int = EXHAUSTIVE_CAP) -> PrimeResult:
    """Scan a in lexicographic order; b is the least nonzero element of r.Ann(ideal(a)).

    ideal(a) ideal(b) = 0 iff b lies in the right annihilator of ideal(a),
    which is itself an ideal, so this is the pair scan of all nonzero a, b.
    """
    it = S.elements(cap)
    next(it)
    count = 0
    for a in it:
        count += 1
        I = S.principal_ideal(a)
        R = S.right_annihilator(I)
        if not R.is_zero():
            return PrimeResult(False, (_vec_list(a), _vec_list(R.least_nonzero())), "exhaustive", {"scanned": count})
    return PrimeResult(True, None, "exhaustive", {"scanned": count})


def is_semiprime(S: FiniteRing, method: str = "auto", cap: int = ELEMENT_CAP, rng=None) -> PrimeResult:
    if method == "exhaustive":
        return semiprime_exhaustive(S, cap)
    m = S.m
    if not is_prime_int(m):
        ps = prime_factors(m)
        for p in ps:
            if (m // p) % p == 0:
                a = (S.basis(0) * (m // p)) % m
                return PrimeResult(False, (_vec_list(a), _vec_list(a)), "torsion")
        for p in ps:
            r = is_semiprime(S.reduce_mod(p), method, cap, rng)
            if not r:
                a = _lift_witness(r.witness[0], m, p)
                return PrimeResult(False, (_vec_list(a), _vec_list(a)), "primary_components")
        return PrimeResult(True, None, "primary_components")
    ok, a = socle.semiprime_test(
        S.k, S.basis_ops(), m, lambda A: _ann2_rows(S, A),
        lambda A: not S.products(A, A).any(), rng)
    if ok:
        return PrimeResult(True, None, "minimal_ideal")
    return PrimeResult(False, (_vec_list(a), _vec_list(a)), "minimal_ideal")


def semiprime_exhaustive(S: FiniteRing, cap: int = EXHAUSTIVE_CAP) -> PrimeResult:
    it = S.elements(cap)
    next(it)
    for a in it:
        I = S.principal_ideal(a)
        if S.product(I, I).is_zero():
            return PrimeResult(False, (_vec_list(a), _vec_list(a)), "exhaustive")
    return PrimeResult(True, None, "exhaustive")


def is_s_unital(S: FiniteRing, method: str = "auto", cap: int = ELEMENT_CAP):
    """(True, None) or (False, r) with r not in rS or not in Sr.

    For finite rings s-unitality means a unit exists, so the linear method
    runs Tominaga's induction on the basis.  The ``elements`` method checks
    the definition element by element.
    """
    if method == "elements":
        for r in S.elements(cap):
            if not S.submodule(S.left_op(r)).contains(r) or not S.submodule(S.right_op(r)).contains(r):
                return False, _vec_list(r)
        return True, None
    for side in ("left", "right"):
        e, w = S.one_sided_identity(side)
        if e is None:
            return False, _vec_list(w)
    return True, None


def enumerate_ideals(S: FiniteRing, cap: int = IDEAL_CAP, element_cap: int = ELEMENT_CAP) -> List[Submodule]:
    return enumerate_lattice(S, S.basis_ops(), S.full(), cap, element_cap)


def cyclic_submodules(S: FiniteRing, ops, ambient: Submodule, element_cap: int = ELEMENT_CAP) -> List[Submodule]:
    seen = {}
    prime = is_prime_int(S.m)
    for x in ambient.elements(element_cap):
        if not x.any():
            continue
        if prime and x[np.flatnonzero(x)[0]] != 1:
            continue  # scalar multiples generate the same submodule
        Z = spin_module(S.submodule(x), ops)
        seen.setdefault(Z, None)
    return list(seen)


def enumerate_lattice(S: FiniteRing, ops, ambient: Submodule, cap: int = IDEAL_CAP,
                      element_cap: int = ELEMENT_CAP, generators=None) -> List[Submodule]:
    """All op-invariant submodules of ``ambient``, as sums of cyclic ones."""
    cyc = generators if generators is not None else cyclic_submodules(S, ops, ambient, element_cap)
    lattice = {S.zero_sub(): None}
    for Z in cyc:
        new = [A + Z for A in lattice]
        for B in new:
            lattice.setdefault(B, None)
        if len(lattice) > cap:
            raise CapExceeded(f"lattice exceeds {cap} nodes", witness={"partial": len(lattice), "cap": cap})
    return sorted(lattice, key=lambda U: (U.size(), U.rows.tolist()))


def random_element(S: FiniteRing, rng: random.Random) -> np.ndarray:
    return np.array([rng.randrange(S.m) for _ in range(S.k)], dtype=INT)


def local_identity(S: FiniteRing, T: Submodule, V, side: str):
    """Tominaga's induction inside a subring T: e in T with e v = v (or v e = v) for rows v of V.

    T must be closed under multiplication.  Returns (e, None), or (None, w)
    where w is an element of the module spanned by V and T with w not in T w
    (resp. w T): a per-element failure.
    """
    V = as_matrix(V, S.k, S.m)
    e = S.zero()
    for v in V:
        ev = S.mul(e, v) if side == "left" else S.mul(v, e)
        w = (v - ev) % S.m
        if not w.any():
            continue
        if T.is_zero():
            return None, w
        M = (T.rows @ (S.right_op(w) if side == "left" else S.left_op(w))) % S.m
        c = solve(M, w, S.m)
        if c is None:
            return None, w
        e2 = (c @ T.rows) % S.m
        if side == "left":
            e = (e + e2 - S.mul(e2, e)) % S.m
        else:
            e = (e + e2 - S.mul(e, e2)) % S.m
    return e, None


def elementwise_local_unit(S: FiniteRing, T: Submodule, M: Submodule, side: str, cap: int):
    """Per-element check that s lies in T s (side 'left') or s T for every s in M."""
    for s in M.elements(cap):
        if not s.any():
            continue
        P = S.products(T.rows, s[None, :]) if side == "left" else S.products(s[None, :], T.rows)
        if not S.submodule(P).contains(s):
            return False, s
    return True, None
