"""Finite groups as Cayley tables, Z^r, and a small catalog of symbolic groups."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import BadSubgroup, CapExceeded, InputError, NotASubgroup, NotNormal, Unknown

SUBGROUP_CAP = 24


class FiniteGroup:
    """Group given by its multiplication table; elements are 0..n-1."""

    is_finite = True

    def __init__(self, table, labels: Optional[Sequence[str]] = None, check: bool = True):
        T = np.asarray(table, dtype=np.int64)
        n = T.shape[0]
        if T.shape != (n, n) or n < 1:
            raise InputError("group table must be a nonempty square array")
        self.order = n
        self.table = T
        self.table.setflags(write=False)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise InputError("label count does not match group order")
        ids = [i for i in range(n) if np.array_equal(T[i], np.arange(n)) and np.array_equal(T[:, i], np.arange(n))]
        if not ids:
            raise InputError("group table has no identity")
        self.identity = ids[0]
        if check:
            self._validate()
        self._inv = [int(np.flatnonzero(T[i] == self.identity)[0]) for i in range(n)]

    def _validate(self):
        T, n = self.table, self.order
        rng = np.arange(n)
        for i in range(n):
            if not np.array_equal(np.sort(T[i]), rng) or not np.array_equal(np.sort(T[:, i]), rng):
                raise InputError(f"table is not a Latin square at index {i}", witness=i)
        # (ab)c == a(bc) for all triples, vectorized over c
        left = T[T]            # left[a, b, c] = T[T[a, b], c]
        right = T[:, T]        # right[a, b, c] = T[a, T[b, c]]
        bad = np.argwhere(left != right)
        if bad.size:
            raise InputError("group table is not associative", witness=[int(x) for x in bad[0]])

    # element interface shared with IntegerLattice
    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return self._inv[a]

    @property
    def e(self) -> int:
        return self.identity

    def elements(self) -> List[int]:
        return list(range(self.order))

    def check_element(self, x) -> int:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or not 0 <= int(x) < self.order:
            raise InputError(f"{x!r} is not an element of a group of order {self.order}")
        return int(x)

    def label(self, a: int) -> str:
        return self.labels[a]

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def power(self, a: int, k: int) -> int:
        r = self.identity
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def element_order(self, a: int) -> int:
        k, r = 1, a
        while r != self.identity:
            r = self.mul(r, a)
            k += 1
        return k


def cyclic(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, labels=[str(i) for i in range(n)], check=False)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    T = np.empty((n * m, n * m), dtype=np.int64)
    for a, b in itertools.product(range(n * m), repeat=2):
        T[a, b] = G.table[a // m, b // m] * m + H.table[a % m, b % m]
    labels = [f"({G.labels[i // m]},{H.labels[i % m]})" for i in range(n * m)]
    return FiniteGroup(T, labels=labels, check=False)


def from_permutations(perms: Sequence[Sequence[int]], labels=None) -> FiniteGroup:
    """Group table of a list of permutations closed under composition; (pq)(i) = p(q(i))."""
    perms = [tuple(p) for p in perms]
    pos = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    T = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            r = tuple(p[q[t]] for t in range(len(q)))
            if r not in pos:
                raise InputError("permutation list is not closed")
            T[i, j] = pos[r]
    return FiniteGroup(T, labels=labels)


def symmetric_group(d: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(d)))
    return from_permutations(perms, labels=["".join(map(str, p)) for p in perms])


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, hash=False, repr=False)
    elements: Tuple[int, ...]

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._set()

    def _set(self):
        s = self.__dict__.get("_s")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_s", s)
        return s

    def issubset(self, other: "Subgroup") -> bool:
        return self._set() <= other._set()


def closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    S = {G.identity}
    frontier = [G.identity]
    gens = list(dict.fromkeys(int(g) for g in gens))
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in S:
                    S.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(G, tuple(sorted(S)))


def make_subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    els = tuple(sorted(set(int(x) for x in elements)))
    s = set(els)
    if G.identity not in s or any(G.mul(a, b) not in s for a in els for b in els):
        raise BadSubgroup("elements do not form a subgroup", witness=list(els))
    return Subgroup(G, els)


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def enumerate_subgroups(G: FiniteGroup, cap: int = SUBGROUP_CAP) -> List[Subgroup]:
    if G.order > cap:
        raise CapExceeded(f"group order {G.order} above subgroup cap {cap}", witness={"order": G.order, "cap": cap})
    seen: Dict[Tuple[int, ...], Subgroup] = {}
    start = trivial_subgroup(G)
    seen[start.elements] = start
    frontier = [start]
    while frontier:
        new = []
        for H in frontier:
            hs = set(H.elements)
            for g in range(G.order):
                if g in hs:
                    continue
                K = closure(G, H.elements + (g,))
                if K.elements not in seen:
                    seen[K.elements] = K
                    new.append(K)
        frontier = new
    return sorted(seen.values(), key=lambda H: (len(H), H.elements))


def is_normal(N: Subgroup, H: Subgroup) -> bool:
    if not N.issubset(H):
        raise NotASubgroup("N is not contained in H", witness=sorted(set(N.elements) - set(H.elements)))
    G = H.parent
    ns = set(N.elements)
    for h in H.elements:
        hi = G.inv(h)
        for n in N.elements:
            if G.mul(G.mul(h, n), hi) not in ns:
                return False
    return True


def quotient_group(G: FiniteGroup, N: Subgroup):
    """(G/N, projection list).  Cosets are numbered by their least element."""
    if not is_normal(N, whole(G)):
        raise NotNormal("subgroup is not normal", witness=list(N.elements))
    coset_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            idx = len(reps)
            reps.append(g)
            for n in N.elements:
                coset_of[G.mul(g, n)] = idx
    q = len(reps)
    T = np.empty((q, q), dtype=np.int64)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            T[i, j] = coset_of[G.mul(a, b)]
    labels = [G.labels[r] + "N" if len(N) > 1 else G.labels[r] for r in reps]
    return FiniteGroup(T, labels=labels, check=False), coset_of


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    g = G.check_element(g)
    return Subgroup(G, tuple(x for x in range(G.order) if G.mul(x, g) == G.mul(g, x)))


def fc_center(G: FiniteGroup) -> Subgroup:
    # every conjugacy class of a finite group is finite
    return whole(G)


def normal_closure(H: Subgroup, X: Iterable[int]) -> Subgroup:
    G = H.parent
    X = [int(x) for x in X]
    if any(x not in H for x in X):
        raise NotASubgroup("generators must lie in H")
    conj = {G.mul(G.mul(h, x), G.inv(h)) for h in H.elements for x in X}
    return closure(G, sorted(conj))


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    """Brute-force search for a table isomorphism, fine for tiny groups."""
    if G.order != H.order:
        return False
    n = G.order
    og = [G.element_order(a) for a in range(n)]
    oh = [H.element_order(a) for a in range(n)]
    if sorted(og) != sorted(oh):
        return False
    cand = [[b for b in range(n) if oh[b] == og[a]] for a in range(n)]
    phi = [-1] * n
    used = [False] * n

    def ok(a):
        for b in range(a + 1):
            if phi[b] < 0:
                continue
            c = G.mul(a, b)
            if c <= a and phi[c] >= 0 and phi[c] != H.mul(phi[a], phi[b]):
                return False
            c = G.mul(b, a)
            if c <= a and phi[c] >= 0 and phi[c] != H.mul(phi[b], phi[a]):
                return False
        return True

    def rec(a):
        if a == n:
            return all(phi[G.mul(x, y)] == H.mul(phi[x], phi[y]) for x in range(n) for y in range(n))
        for b in cand[a]:
            if not used[b]:
                phi[a], used[b] = b, True
                if ok(a) and rec(a + 1):
                    return True
                phi[a], used[b] = -1, False
        return False

    return rec(0)


class IntegerLattice:
    """The free abelian group Z^r; elements are integer tuples."""

    is_finite = False

    def __init__(self, rank: int):
        if rank < 1:
            raise InputError("lattice rank must be positive")
        self.rank = rank

    @property
    def e(self):
        return (0,) * self.rank

    identity = e

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def check_element(self, x):
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool) and self.rank == 1:
            return (int(x),)
        try:
            t = tuple(int(v) for v in x)
        except TypeError:
            raise InputError(f"{x!r} is not an element of Z^{self.rank}")
        if len(t) != self.rank:
            raise InputError(f"{x!r} has the wrong length for Z^{self.rank}")
        return t

    def label(self, a):
        return str(a[0]) if self.rank == 1 else str(list(a))

    def __eq__(self, other):
        return isinstance(other, IntegerLattice) and other.rank == self.rank

    def __hash__(self):
        return hash(("Z", self.rank))

    def __repr__(self):
        return f"IntegerLattice({self.rank})"


def lattice_hnf(gens: Sequence[Sequence[int]], r: int) -> List[List[int]]:
    """Row Hermite normal form over Z (zero rows dropped)."""
    A = [list(map(int, g)) for g in gens if any(g)]
    out, col = [], 0
    while A and col < r:
        nz = [row for row in A if row[col] != 0]
        if not nz:
            col += 1
            continue
        while len([row for row in A if row[col] != 0]) > 1:
            A.sort(key=lambda row: (row[col] == 0, abs(row[col])))
            p = A[0]
            for row in A[1:]:
                if row[col]:
                    q = row[col] // p[col]
                    for t in range(r):
                        row[t] -= q * p[t]
        A.sort(key=lambda row: (row[col] == 0, abs(row[col])))
        p = A.pop(0)
        if p[col] < 0:
            p = [-x for x in p]
        out.append(p)
        A = [row for row in A if any(row)]
        col += 1
    for i, p in enumerate(out):
        c = next(t for t in range(r) if p[t])
        for j in range(i):
            q = out[j][c] // p[c]
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], p)]
    return out


def lattice_quotient(L: IntegerLattice, gens: Sequence[Sequence[int]]):
    """Z^r / N for a full-rank sublattice N: (FiniteGroup, projection function)."""
    r = L.rank
    H = lattice_hnf([L.check_element(g) for g in gens], r)
    if len(H) < r:
        raise InputError("only full-rank sublattices have finite quotients here")
    diag = [H[i][i] for i in range(r)]

    def reduce(v):
        v = list(v)
        for i in range(r):
            q = v[i] // diag[i]
            if q:
                v = [a - q * b for a, b in zip(v, H[i])]
        return tuple(v)

    reps = sorted(itertools.product(*[range(d) for d in diag]))
    pos = {rep: i for i, rep in enumerate(reps)}
    n = len(reps)
    T = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            T[i, j] = pos[reduce(tuple(x + y for x, y in zip(a, b)))]
    G = FiniteGroup(T, labels=[str(list(x)) if r > 1 else str(x[0]) for x in reps], check=False)
    return G, (lambda v: pos[reduce(L.check_element(v))])


# --- symbolic catalog ----------------------------------------------------

@dataclass(frozen=True)
class SymbolicGroup:
    kind: str                       # Trivial | Cyclic | FiniteTable | IntegerLattice | Free | DirectProduct
    n: int = 0
    children: Tuple["SymbolicGroup", ...] = ()
    table: Optional[FiniteGroup] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.kind in ("Cyclic", "IntegerLattice", "Free") and self.n < 1:
            raise InputError(f"{self.kind} needs a positive parameter")
        if self.kind == "DirectProduct" and len(self.children) < 2:
            raise InputError("a direct product needs at least two factors")

    def __str__(self):
        if self.kind == "Trivial":
            return "1"
        if self.kind == "Cyclic":
            return f"C{self.n}"
        if self.kind == "IntegerLattice":
            return "Z" if self.n == 1 else f"Z^{self.n}"
        if self.kind == "Free":
            return f"F{self.n}"
        if self.kind == "FiniteTable":
            return f"G{self.table.order}"
        return " x ".join(str(c) for c in self.children)


_ATOM = re.compile(r"^(?:Z(?:\^(\d+))?|C(\d+)|F(\d+)|1)$")


def parse_group_expr(expr: str) -> SymbolicGroup:
    parts = [p.strip() for p in re.split(r"\s*x\s*", expr.strip())]
    if not parts or any(not p for p in parts):
        raise InputError(f"cannot parse group expression {expr!r}")
    atoms = []
    for p in parts:
        mt = _ATOM.match(p)
        if not mt:
            raise InputError(f"unknown group atom {p!r}")
        if p == "1":
            atoms.append(SymbolicGroup("Trivial"))
        elif p.startswith("Z"):
            atoms.append(SymbolicGroup("IntegerLattice", int(mt.group(1) or 1)))
        elif p.startswith("C"):
            n = int(mt.group(2))
            atoms.append(SymbolicGroup("Trivial") if n == 1 else SymbolicGroup("Cyclic", n))
        else:
            atoms.append(SymbolicGroup("Free", int(mt.group(3))))
    return atoms[0] if len(atoms) == 1 else SymbolicGroup("DirectProduct", children=tuple(atoms))


def symbolic_predicates(G: SymbolicGroup) -> Dict[str, bool]:
    k = G.kind
    if k == "Trivial":
        return dict(is_torsion_free=True, is_ordered=True, has_nontrivial_finite_normal_subgroup=False, is_finite=True)
    if k in ("IntegerLattice", "Free"):
        return dict(is_torsion_free=True, is_ordered=True, has_nontrivial_finite_normal_subgroup=False, is_finite=False)
    if k == "Cyclic" or (k == "FiniteTable" and G.table is not None):
        big = G.n > 1 if k == "Cyclic" else G.table.order > 1
        return dict(is_torsion_free=not big, is_ordered=not big,
                    has_nontrivial_finite_normal_subgroup=big, is_finite=True)
    if k == "DirectProduct":
        ps = [symbolic_predicates(c) for c in G.children]
        return dict(
            is_torsion_free=all(p["is_torsion_free"] for p in ps),
            is_ordered=all(p["is_ordered"] for p in ps),
            has_nontrivial_finite_normal_subgroup=any(p["has_nontrivial_finite_normal_subgroup"] for p in ps),
            is_finite=all(p["is_finite"] for p in ps),
        )
    raise Unknown(f"no catalog rule for {k}")


def concrete(G: SymbolicGroup):
    """FiniteGroup or IntegerLattice realizing G, when the catalog allows it."""
    k = G.kind
    if k == "Trivial":
        return cyclic(1)
    if k == "Cyclic":
        return cyclic(G.n)
    if k == "FiniteTable":
        return G.table
    if k == "IntegerLattice":
        return IntegerLattice(G.n)
    if k == "DirectProduct":
        parts = [concrete(c) for c in G.children]
        if all(isinstance(p, FiniteGroup) for p in parts):
            out = parts[0]
            for p in parts[1:]:
                out = direct_product(out, p)
            return out
        if all(isinstance(p, IntegerLattice) for p in parts):
            return IntegerLattice(sum(p.rank for p in parts))
    raise Unknown(f"{G} has no concrete realization")
