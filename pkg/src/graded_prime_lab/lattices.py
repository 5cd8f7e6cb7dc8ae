"""Lattices of operator-invariant submodules inside a coordinate subspace.

Ideals of S, graded ideals, G-invariant ideals of S_e and H/N-invariant
ideals of S_N are all the submodules of a coordinate subspace span(P) that are
stable under a finite operator set.  Any two members satisfy AB in both A and
B, so the same primeness engine applies to each of them.
"""
from __future__ import annotations

import random
from typing import List, Optional, Sequence

import numpy as np

from . import socle
from .errors import InputError
from .modring import (ELEMENT_CAP, IDEAL_CAP, FiniteRing, PrimeResult, core_module, cyclic_submodules,
                      enumerate_lattice, spin_module, structural_pair)
from .zmod import INT, Submodule, is_prime_int, prime_factors


class Lattice:
    def __init__(self, S: FiniteRing, coords: Sequence[int], ops: Sequence[np.ndarray], name: str = ""):
        self.S = S
        self.P = sorted(int(i) for i in coords)
        self.ops = list(ops)
        self.name = name
        self._amb = None
        self._enum = {}

    @property
    def m(self):
        return self.S.m

    def ambient(self) -> Submodule:
        if self._amb is None:
            self._amb = self.S.submodule(np.eye(self.S.k, dtype=INT)[self.P]) if self.P else self.S.zero_sub()
        return self._amb

    def closure(self, X) -> Submodule:
        U = X if isinstance(X, Submodule) else self.S.submodule(X)
        if not U <= self.ambient():
            raise InputError(f"generators leave the ambient subspace of {self.name or 'the lattice'}")
        return spin_module(U, self.ops)

    def core(self, U: Submodule) -> Submodule:
        return core_module(U.intersect(self.ambient()), self.ops)

    def is_member(self, U: Submodule) -> bool:
        if not U <= self.ambient():
            return False
        return all(U.contains_all((U.rows @ op) % self.m) for op in self.ops) if not U.is_zero() else True

    def cyclic(self, element_cap: int = ELEMENT_CAP) -> List[Submodule]:
        return cyclic_submodules(self.S, self.ops, self.ambient(), element_cap)

    def enumerate(self, cap: int = IDEAL_CAP, element_cap: int = ELEMENT_CAP) -> List[Submodule]:
        key = (cap, element_cap)
        if key not in self._enum:
            self._enum[key] = enumerate_lattice(self.S, self.ops, self.ambient(), cap, element_cap)
        return list(self._enum[key])

    def right_ann(self, A: Submodule) -> Submodule:
        return self.S.right_annihilator(A, within=self.ambient())

    def ann2(self, A: Submodule) -> Submodule:
        amb = self.ambient()
        return self.S.right_annihilator(A, within=amb).intersect(self.S.left_annihilator(A, within=amb))

    # -- local coordinates for the F_p engine --------------------------------
    def _local_ops(self):
        P = self.P
        return [np.ascontiguousarray(op[np.ix_(P, P)]) for op in self.ops]

    def _embed(self, rows) -> np.ndarray:
        rows = np.asarray(rows, dtype=INT).reshape(-1, len(self.P))
        out = np.zeros((rows.shape[0], self.S.k), dtype=INT)
        out[:, self.P] = rows
        return out

    def _local(self, U: Submodule) -> np.ndarray:
        return U.rows[:, self.P] if U.rows.shape[0] else np.zeros((0, len(self.P)), dtype=INT)

    def minimal(self, within: Optional[Submodule] = None, rng=None) -> Submodule:
        """A certified minimal nonzero member (prime modulus only)."""
        if not is_prime_int(self.m):
            raise InputError("minimal members are only computed over a prime field")
        B = self._local(within if within is not None else self.ambient())
        A = socle.minimal_submodule(B, self._local_ops(), self.m, len(self.P), rng)
        return self.S.submodule(self._embed(A))

    def is_prime(self, rng=None) -> PrimeResult:
        """Is {0} prime in this lattice (nonzero members never multiply to 0)?"""
        if not self.P:
            return PrimeResult(False, None, "zero_ambient")
        m = self.m
        if not is_prime_int(m):
            b = np.zeros(self.S.k, dtype=INT)
            b[self.P[0]] = 1
            a, bb = structural_pair(m, b)
            return PrimeResult(False, ([int(x) for x in a], [int(x) for x in bb]), "torsion")
        n = len(self.P)

        def rann(Aloc):
            return self._local(self.right_ann(self.S.submodule(self._embed(Aloc))))

        ok, wit = socle.prime_test(n, self._local_ops(), m, rann, rng)
        if ok:
            return PrimeResult(True, None, "minimal_member")
        a, b = self._embed(wit[0])[0], self._embed(wit[1])[0]
        return PrimeResult(False, ([int(x) for x in a], [int(x) for x in b]), "minimal_member")

    def is_semiprime(self, rng=None) -> PrimeResult:
        if not self.P:
            return PrimeResult(True, None, "zero_ambient")
        m = self.m
        if not is_prime_int(m):
            for p in prime_factors(m):
                if (m // p) % p == 0:
                    a = np.zeros(self.S.k, dtype=INT)
                    a[self.P[0]] = m // p
                    return PrimeResult(False, ([int(x) for x in a], [int(x) for x in a]), "torsion")
            for p in prime_factors(m):
                sub = self.reduce_mod(p)
                r = sub.is_semiprime(rng)
                if not r:
                    a = (np.asarray(r.witness[0], dtype=INT) * (m // p)) % m
                    return PrimeResult(False, ([int(x) for x in a], [int(x) for x in a]), "primary_components")
            return PrimeResult(True, None, "primary_components")
        n = len(self.P)

        def ann2(Aloc):
            return self._local(self.ann2(self.S.submodule(self._embed(Aloc))))

        def sq0(Aloc):
            X = self._embed(Aloc)
            return not self.S.products(X, X).any()

        ok, a = socle.semiprime_test(n, self._local_ops(), m, ann2, sq0, rng)
        if ok:
            return PrimeResult(True, None, "minimal_member")
        a = self._embed(a)[0]
        return PrimeResult(False, ([int(x) for x in a], [int(x) for x in a]), "minimal_member")

    def reduce_mod(self, p: int) -> "Lattice":
        return Lattice(self.S.reduce_mod(p), self.P, [op % p for op in self.ops], self.name)

    # -- exhaustive cross-check routes ----------------------------------------
    def is_prime_exhaustive(self, element_cap: int = 4096) -> PrimeResult:
        """Pairs of nonzero elements: closure(a) closure(b) = 0 ?

        Closures of all elements are computed once; the least a (in element
        order) with a partner, then the least partner, is the witness.
        """
        if not self.P:
            return PrimeResult(False, None, "zero_ambient")
        els = [x for x in self.ambient().elements(element_cap) if x.any()]
        cl = [self.closure(x) for x in els]
        for i, A in enumerate(cl):
            for j, B in enumerate(cl):
                if self.S.product(A, B).is_zero():
                    return PrimeResult(False, ([int(v) for v in els[i]], [int(v) for v in els[j]]), "exhaustive")
        return PrimeResult(True, None, "exhaustive")

    def is_semiprime_exhaustive(self, element_cap: int = 4096) -> PrimeResult:
        for x in self.ambient().elements(element_cap):
            if not x.any():
                continue
            A = self.closure(x)
            if self.S.product(A, A).is_zero():
                return PrimeResult(False, ([int(v) for v in x], [int(v) for v in x]), "exhaustive")
        return PrimeResult(True, None, "exhaustive")

    def prime_members(self, members: Sequence[Submodule], cyclic: Sequence[Submodule]) -> List[Submodule]:
        """Proper members Q with: A B in Q implies A in Q or B in Q.

        Checking cyclic A, B suffices: if AB lies in Q with A, B not in Q,
        some cyclic pieces A', B' outside Q already have A'B' in Q.
        """
        amb = self.ambient()
        out = []
        for Q in members:
            if Q == amb:
                continue
            outside = [Z for Z in cyclic if not Z <= Q]
            ok = True
            for A in outside:
                for B in outside:
                    if self.S.product(A, B) <= Q:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(Q)
        return out


def ring_lattice(S: FiniteRing) -> Lattice:
    return Lattice(S, range(S.k), S.basis_ops(), "ideals")
