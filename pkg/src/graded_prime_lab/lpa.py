"""Directed graphs, condition (MT-3), and Leavitt path algebras of finite acyclic graphs.

For a finite acyclic graph, L_R(E) is the direct sum over sinks w of the full
matrix rings over R indexed by the paths ending at w.  A monomial a b* (with
r(a) = r(b)) becomes the sum of e_{a g, b g} over paths g from r(a) to a sink,
and its degree |a| - |b| is the difference of path lengths.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (CapExceeded, InputError, InternalExhaustion, NotAcyclic, NotUnital, TheoremViolation,
                     ZeroInput)
from .graded import GradedRing, classify_grading
from .groups import IntegerLattice
from .modring import FiniteRing, direct_sum, is_prime, matrix_ring
from .zmod import INT

LPA_RANK_CAP = 128


@dataclass
class DirectedGraph:
    vertices: List[str]
    edges: List[Tuple[str, int, int]] = field(default_factory=list)
    infinite_emitters: frozenset = frozenset()

    def __post_init__(self):
        n = len(self.vertices)
        if n == 0:
            raise InputError("a graph needs at least one vertex")
        if len(set(self.vertices)) != n:
            raise InputError("vertex labels must be unique")
        names = [e[0] for e in self.edges]
        if len(set(names)) != len(names):
            raise InputError("edge names must be unique")
        for name, s, r in self.edges:
            if not (0 <= s < n and 0 <= r < n):
                raise InputError(f"edge {name} has an endpoint outside the vertex list")
        self.infinite_emitters = frozenset(self.infinite_emitters)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def out_edges(self, v: int) -> List[int]:
        return [i for i, (_, s, _) in enumerate(self.edges) if s == v]

    def is_sink(self, v: int) -> bool:
        return v not in self.infinite_emitters and not self.out_edges(v)

    def is_regular(self, v: int) -> bool:
        return v not in self.infinite_emitters and bool(self.out_edges(v))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [{"name": f, "src": self.vertices[s], "dst": self.vertices[r]} for f, s, r in self.edges],
                "infinite_emitters": [self.vertices[v] for v in sorted(self.infinite_emitters)]}

    @classmethod
    def from_json(cls, d: dict) -> "DirectedGraph":
        try:
            vs = list(d["vertices"])
            pos = {v: i for i, v in enumerate(vs)}
            es = [(e["name"], pos[e["src"]], pos[e["dst"]]) for e in d.get("edges", [])]
            inf = frozenset(pos[v] for v in d.get("infinite_emitters", []))
        except (KeyError, TypeError) as ex:
            raise InputError(f"malformed graph description: {ex}")
        return cls(vs, es, inf)


def graph_from_edges(n: int, pairs: Sequence[Tuple[int, int]], prefix: str = "v") -> DirectedGraph:
    vs = [f"{prefix}{i + 1}" for i in range(n)]
    return DirectedGraph(vs, [(f"f{i + 1}", s, r) for i, (s, r) in enumerate(pairs)])


# --- reachability and (MT-3) --------------------------------------------------------

def reachability_bits(E: DirectedGraph) -> List[int]:
    """Row v as an int bitset of the vertices reachable from v (v included)."""
    succ = [0] * E.n
    for _, s, r in E.edges:
        succ[s] |= 1 << r
    rows = []
    for v in range(E.n):
        seen, frontier = 1 << v, 1 << v
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= succ[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= nxt
        rows.append(seen)
    return rows


def reachability(E: DirectedGraph) -> np.ndarray:
    rows = reachability_bits(E)
    return np.array([[(rows[u] >> v) & 1 == 1 for v in range(E.n)] for u in range(E.n)], dtype=bool)


def satisfies_mt3(E: DirectedGraph):
    """(True, None) or (False, (u, v)) with no vertex below both u and v."""
    rows = reachability_bits(E)
    for u in range(E.n):
        for v in range(u + 1, E.n):
            if rows[u] & rows[v] == 0:
                return False, (E.vertices[u], E.vertices[v])
    return True, None


def find_cycle(E: DirectedGraph) -> Optional[List[int]]:
    color = [0] * E.n
    stack: List[int] = []

    def dfs(v):
        color[v] = 1
        stack.append(v)
        for i in E.out_edges(v):
            w = E.edges[i][2]
            if color[w] == 1:
                return stack[stack.index(w):] + [w]
            if color[w] == 0:
                c = dfs(w)
                if c:
                    return c
        stack.pop()
        color[v] = 2
        return None

    for v in range(E.n):
        if color[v] == 0:
            c = dfs(v)
            if c:
                return c
    return None


def lpa_prime_decision(E: DirectedGraph, R) -> dict:
    """L_R(E) is prime iff R is prime and E satisfies (MT-3)."""
    if isinstance(R, FiniteRing):
        if not R.is_unital():
            raise NotUnital("coefficient ring must be unital")
        rp = is_prime(R)
        r_prime, r_wit = rp.verdict, rp.witness
    else:
        r_prime, r_wit = bool(R), None
    mt3, pair = satisfies_mt3(E)
    cert = {}
    if not r_prime:
        cert["ring"] = {"prime": False, "witness": r_wit}
    if not mt3:
        cert["graph"] = {"mt3": False, "witness": list(pair)}
    return {"verdict": "prime" if (r_prime and mt3) else "not_prime", "ring_prime": r_prime, "mt3": mt3,
            "certificate": cert}


# --- paths ---------------------------------------------------------------------------

Path = Tuple[int, Tuple[int, ...]]  # (start vertex, edge indices)


def path_range(E: DirectedGraph, p: Path) -> int:
    return E.edges[p[1][-1]][2] if p[1] else p[0]


def all_paths(E: DirectedGraph) -> List[Path]:
    """E^* for an acyclic graph, by length then lexicographically."""
    out = [(v, ()) for v in range(E.n)]
    layer = [(E.edges[i][1], (i,)) for i in range(len(E.edges))]
    while layer:
        out += sorted(layer)
        nxt = []
        for s, es in layer:
            for i in E.out_edges(path_range(E, (s, es))):
                nxt.append((s, es + (i,)))
        layer = nxt
    return out


def concat(E: DirectedGraph, p: Path, q: Path) -> Path:
    if path_range(E, p) != q[0]:
        raise InputError("paths are not composable")
    return (p[0], p[1] + q[1])


def path_label(E: DirectedGraph, p: Path) -> str:
    return "".join(E.edges[i][0] for i in p[1]) if p[1] else E.vertices[p[0]]


# --- realization ---------------------------------------------------------------------

class LpaRealization:
    def __init__(self, E: DirectedGraph, R: FiniteRing, S: GradedRing, sink_paths: Dict[int, List[Path]],
                 offsets: Dict[int, int]):
        self.E, self.R, self.S = E, R, S
        self.sink_paths = sink_paths
        self.offsets = offsets
        self.pos = {w: {p: i for i, p in enumerate(ps)} for w, ps in sink_paths.items()}
        self.paths = all_paths(E)

    @property
    def k(self):
        return self.S.k

    def _idx(self, w, i, j, s=0) -> int:
        n = len(self.sink_paths[w])
        return self.offsets[w] + (i * n + j) * self.R.k + s

    def monomial(self, alpha: Path, beta: Path, r=None) -> np.ndarray:
        """r alpha beta^* (zero when r(alpha) != r(beta))."""
        E, R = self.E, self.R
        coef = R.unit() if r is None else np.asarray(r, dtype=INT) % R.m
        out = np.zeros(self.k, dtype=INT)
        v = path_range(E, alpha)
        if v != path_range(E, beta):
            return out
        for w, ps in self.sink_paths.items():
            pos = self.pos[w]
            for g in ps:
                if g[0] != v:
                    continue
                i, j = pos[concat(E, alpha, g)], pos[concat(E, beta, g)]
                out[self._idx(w, i, j): self._idx(w, i, j) + R.k] = coef
        return out % R.m

    def vertex(self, v: int, r=None) -> np.ndarray:
        return self.monomial((v, ()), (v, ()), r)

    def edge(self, f: int) -> np.ndarray:
        s, r = self.E.edges[f][1], self.E.edges[f][2]
        return self.monomial((s, (f,)), (r, ()))

    def ghost(self, f: int) -> np.ndarray:
        s, r = self.E.edges[f][1], self.E.edges[f][2]
        return self.monomial((r, ()), (s, (f,)))

    def star(self, p: Path) -> np.ndarray:
        return self.monomial((path_range(self.E, p), ()), p)

    def path(self, p: Path) -> np.ndarray:
        return self.monomial(p, (path_range(self.E, p), ()))

    def mul(self, *xs) -> np.ndarray:
        out = xs[0]
        for x in xs[1:]:
            out = self.S.ring.mul(out, x)
        return out

    def verify_relations(self) -> dict:
        """Relations (a)-(e) on the generators; returns counts, raises on failure."""
        E, mul = self.E, self.mul
        V = [self.vertex(v) for v in range(E.n)]
        F = [self.edge(f) for f in range(len(E.edges))]
        Fs = [self.ghost(f) for f in range(len(E.edges))]
        zero = np.zeros(self.k, dtype=INT)
        checks = 0

        def need(cond, rel, wit):
            nonlocal checks
            checks += 1
            if not cond:
                raise TheoremViolation(f"relation ({rel}) fails in the realization", witness=wit)

        for v in range(E.n):
            for w in range(E.n):
                need(np.array_equal(mul(V[v], V[w]), V[v] if v == w else zero), "a", [v, w])
        for f, (_, s, r) in enumerate(E.edges):
            need(np.array_equal(mul(V[s], F[f]), F[f]) and np.array_equal(mul(F[f], V[r]), F[f]), "b", [f])
            need(np.array_equal(mul(V[r], Fs[f]), Fs[f]) and np.array_equal(mul(Fs[f], V[s]), Fs[f]), "c", [f])
            for g, (_, _, r2) in enumerate(E.edges):
                need(np.array_equal(mul(Fs[f], F[g]), V[r] if f == g else zero), "d", [f, g])
        for v in range(E.n):
            if E.is_regular(v):
                tot = zero
                for f in E.out_edges(v):
                    tot = (tot + mul(F[f], Fs[f])) % self.R.m
                need(np.array_equal(tot, V[v]), "e", [v])
        return {"checked": checks}

    def scalar_vertex(self, x: np.ndarray):
        """(t, v) with x = t v and t nonzero, else None."""
        x = np.asarray(x, dtype=INT) % self.R.m
        if not x.any():
            return None
        R = self.R
        for v in range(self.E.n):
            # t sits in the diagonal slot of the first path from v to a sink
            w, j = next((w, self.pos[w][g]) for w, ps in self.sink_paths.items() for g in ps if g[0] == v)
            i = self._idx(w, j, j)
            t = x[i: i + R.k]
            if t.any() and np.array_equal(self.monomial((v, ()), (v, ()), t), x):
                return t, v
        return None


def build_lpa_acyclic(E: DirectedGraph, R: FiniteRing, classify: bool = True) -> LpaRealization:
    if E.infinite_emitters:
        raise InputError("infinite emitters are not realized")
    cyc = find_cycle(E)
    if cyc is not None:
        raise NotAcyclic("graph has a cycle", witness=[E.vertices[v] for v in cyc])
    if not R.is_unital():
        raise NotUnital("coefficient ring must be unital")
    paths = all_paths(E)
    sinks = [v for v in range(E.n) if E.is_sink(v)]
    sink_paths = {w: [p for p in paths if path_range(E, p) == w] for w in sinks}
    rank = sum(len(ps) ** 2 for ps in sink_paths.values()) * R.k
    if rank > LPA_RANK_CAP:
        raise CapExceeded(f"realization rank {rank} above {LPA_RANK_CAP}", witness={"rank": rank})
    blocks = [matrix_ring(len(sink_paths[w]), R) for w in sinks]
    ring = direct_sum(blocks) if len(blocks) > 1 else blocks[0]
    offsets, off, degs = {}, 0, []
    for w in sinks:
        ps = sink_paths[w]
        offsets[w] = off
        off += len(ps) ** 2 * R.k
        degs += [len(p[1]) - len(q[1]) for p in ps for q in ps for _ in range(R.k)]
    S = GradedRing(ring, IntegerLattice(1), degs)
    real = LpaRealization(E, R, S, sink_paths, offsets)
    real.verify_relations()
    if classify:
        f = classify_grading(S)
        if not (f.epsilon_strong and f.nearly_epsilon_strong):
            raise TheoremViolation("canonical grading of a finite-graph Leavitt path algebra is not epsilon-strong",
                                   witness=f.failures)
        S.flags = f
    return real


# --- Tomforde reduction and the two-ideal criterion ------------------------------------

def tomforde_reduce(real: LpaRealization, a) -> Tuple[Path, Path, int, np.ndarray]:
    """alpha, beta, v, t with alpha^* a beta = t v, searched by increasing |alpha| + |beta|."""
    a = np.asarray(a, dtype=INT) % real.R.m
    if not a.any():
        raise ZeroInput("a must be nonzero")
    if not real.S.is_homogeneous(a) or any(real.S.deg[i] != (0,) for i in np.flatnonzero(a)):
        raise InputError("a must be homogeneous of degree 0")
    E = real.E
    order = sorted(((len(p[1]) + len(q[1]), p, q) for p in real.paths for q in real.paths
                    if path_range(E, p) == path_range(E, q)), key=lambda t: (t[0], t[1], t[2]))
    for _, al, be in order:
        x = real.mul(real.star(al), a, real.path(be))
        hit = real.scalar_vertex(x)
        if hit is not None:
            t, v = hit
            return al, be, v, t
    raise InternalExhaustion("no path pair reduces a to a vertex multiple", witness=[int(x) for x in a])


def mt3_ideal_criterion_check(real: LpaRealization) -> dict:
    """S v S w S = 0 for some pair exactly when (MT-3) fails.

    S is unital, so SvS SwS = SvSwS, and that vanishes iff v S w = 0.
    """
    E, ring = real.E, real.S.ring
    basis = np.eye(ring.k, dtype=INT)
    vS = [ring.products(real.vertex(v)[None, :], basis) for v in range(E.n)]
    rows = reachability_bits(E)
    zero_pairs, consistent = [], True
    for v in range(E.n):
        for w in range(E.n):
            z = not ring.products(vS[v], real.vertex(w)[None, :]).any()
            common = rows[v] & rows[w] != 0
            if z:
                zero_pairs.append((E.vertices[v], E.vertices[w]))
            consistent &= z == (not common)
    mt3 = satisfies_mt3(E)[0]
    consistent &= (not zero_pairs) == mt3
    return {"consistent": consistent, "zero_pairs": zero_pairs, "mt3": mt3}


# --- graph families --------------------------------------------------------------------

def _canonical(n: int, edges: Sequence[Tuple[int, int]]) -> Tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[s], perm[r]) for s, r in edges))
        if best is None or key < best:
            best = key
    return best


def simple_dags(max_vertices: int = 5, max_edges: int = 6) -> List[DirectedGraph]:
    """Simple acyclic graphs up to isomorphism, by (vertices, edges, canonical edge list)."""
    out = []
    for n in range(1, max_vertices + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        seen = set()
        for e in range(0, min(max_edges, len(pairs)) + 1):
            for sub in itertools.combinations(pairs, e):
                c = _canonical(n, sub)
                if c not in seen:
                    seen.add(c)
        for c in sorted(seen, key=lambda c: (len(c), c)):
            out.append(graph_from_edges(n, c))
    return out


def random_acyclic_graph(rng: random.Random, max_vertices: int = 5, max_edges: int = 6) -> DirectedGraph:
    n = rng.randint(1, max_vertices)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    e = rng.randint(0, min(max_edges, len(pairs)))
    return graph_from_edges(n, sorted(rng.sample(pairs, e)))


def random_degree_zero(real: LpaRealization, rng: random.Random) -> np.ndarray:
    idx = real.S.idx((0,))
    m = real.R.m
    while True:
        a = np.zeros(real.k, dtype=INT)
        for i in idx:
            a[i] = rng.randrange(m)
        if a.any():
            return a


E1 = DirectedGraph(["v"])
E2 = DirectedGraph(["v1", "v2"])
E3 = DirectedGraph(["v1", "v2"], [("f", 0, 1)])
