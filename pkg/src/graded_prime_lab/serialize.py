"""JSON in and out: groups, rings, graded rings, constructions, graphs.

Everything is UTF-8 JSON with sorted keys and integers only; a float
anywhere is an input error, since the arithmetic is exact.
"""
from __future__ import annotations

import json
from typing import Any, Union

import numpy as np

from .errors import InputError
from .groups import FiniteGroup, IntegerLattice, SymbolicGroup, concrete, parse_group_expr
from .modring import FiniteRing, direct_sum, matrix_ring, zero_ring_on, zmod


def plain(x: Any) -> Any:
    """numpy scalars/arrays and tuples -> ints and lists, recursively."""
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return plain(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        raise InputError(f"float {x!r} in a payload; only integers are allowed")
    if x is None or isinstance(x, str):
        return x
    if isinstance(x, (set, frozenset)):
        return sorted(plain(v) for v in x)
    if hasattr(x, "to_json"):
        return plain(x.to_json())
    raise InputError(f"cannot serialize {type(x).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(plain(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def _no_float(x):
    raise InputError(f"float {x} in input; only integers are allowed")


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as ex:
        raise InputError(f"invalid JSON: {ex}")


def load_path(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _need(d: dict, *keys):
    if not isinstance(d, dict):
        raise InputError(f"expected an object, got {type(d).__name__}")
    miss = [k for k in keys if k not in d]
    if miss:
        raise InputError(f"missing field(s) {miss}")
    return [d[k] for k in keys]


# --- groups ------------------------------------------------------------------

def group_to_json(G) -> dict:
    if isinstance(G, FiniteGroup):
        return {"kind": "finite", "table": G.table.tolist(), "labels": list(G.labels)}
    if isinstance(G, IntegerLattice):
        return {"kind": "symbolic", "expr": "Z" if G.rank == 1 else f"Z^{G.rank}"}
    if isinstance(G, SymbolicGroup):
        if G.kind == "FiniteTable":
            return group_to_json(G.table)
        return {"kind": "symbolic", "expr": str(G)}
    raise InputError(f"not a group: {G!r}")


def group_from_json(d: Union[dict, str], symbolic: bool = False):
    """FiniteGroup / IntegerLattice, or the SymbolicGroup itself when symbolic=True."""
    if isinstance(d, str):
        d = {"kind": "symbolic", "expr": d}
    (kind,) = _need(d, "kind")
    if kind == "finite":
        (table,) = _need(d, "table")
        G = FiniteGroup(table, d.get("labels"))
        return SymbolicGroup("FiniteTable", table=G) if symbolic else G
    if kind == "symbolic":
        (expr,) = _need(d, "expr")
        S = parse_group_expr(expr)
        return S if symbolic else concrete(S)
    raise InputError(f"unknown group kind {kind!r}")


# --- rings -------------------------------------------------------------------

def ring_to_json(R: FiniteRing) -> dict:
    out = {"modulus": R.m, "rank": R.k, "labels": list(R.labels), "mul": R.C.tolist()}
    if R.declared_unit is not None:
        out["unit"] = R.declared_unit.tolist()
    return out


def ring_from_json(d: dict) -> FiniteRing:
    if "preset" in d:
        p = d["preset"]
        if p == "Zmod":
            return zmod(int(_need(d, "m")[0]))
        if p == "ZeroRing":
            return zero_ring_on(int(_need(d, "m")[0]), int(d.get("rank", 1)))
        if p == "MatrixRing":
            n, base = _need(d, "n", "base")
            return matrix_ring(int(n), ring_from_json(base))
        if p == "DirectSum":
            (parts,) = _need(d, "parts")
            return direct_sum([ring_from_json(q) for q in parts])
        raise InputError(f"unknown ring preset {p!r}")
    m, k, mul = _need(d, "modulus", "rank", "mul")
    C = np.asarray(mul, dtype=np.int64)
    if C.shape != (k, k, k):
        raise InputError(f"mul has shape {C.shape}, expected {(k, k, k)}")
    return FiniteRing(m, C, unit=d.get("unit"), labels=d.get("labels"))


def rings_equal(R: FiniteRing, T: FiniteRing) -> bool:
    if R.m != T.m or R.k != T.k or not np.array_equal(R.C, T.C):
        return False
    a, b = R.declared_unit, T.declared_unit
    return (a is None) == (b is None) and (a is None or np.array_equal(a, b))


# --- graded rings ------------------------------------------------------------

def graded_to_json(S) -> dict:
    degs = [list(d) if isinstance(d, tuple) else int(d) for d in S.deg]
    return {"ring": ring_to_json(S.ring), "group": group_to_json(S.group), "degrees": degs}


def graded_from_json(d: dict):
    from .graded import GradedRing
    if "construct" in d:
        return construction_from_json(d)
    r, g, degs = _need(d, "ring", "group", "degrees")
    R = ring_from_json(r)
    G = group_from_json(g)
    if not isinstance(G, (FiniteGroup, IntegerLattice)):
        raise InputError("a grading needs a finite group or Z^r")
    return GradedRing(R, G, degs)


def graded_equal(S, T) -> bool:
    return rings_equal(S.ring, T.ring) and group_to_json(S.group) == group_to_json(T.group) and S.deg == T.deg


# --- constructions -----------------------------------------------------------

def _elem_key(G, key: str):
    try:
        v = json.loads(key)
    except json.JSONDecodeError:
        raise InputError(f"bad group element key {key!r}")
    return G.check_element(v) if isinstance(G, IntegerLattice) else int(v)


def _keyed(G, d: dict) -> dict:
    return {_elem_key(G, k): v for k, v in d.items()}


def construction_from_json(d: dict):
    from . import constructions as C
    (kind,) = _need(d, "construct")
    if kind == "matrix":
        r, n = _need(d, "ring", "n")
        return C.build_matrix_graded(ring_from_json(r), int(n), d.get("mode", "Z"))
    if kind == "lpa":
        from .lpa import DirectedGraph, build_lpa_acyclic
        r, g = _need(d, "ring", "graph")
        return build_lpa_acyclic(DirectedGraph.from_json(g), ring_from_json(r)).S
    r, g = _need(d, "ring", "group")
    R, G = ring_from_json(r), group_from_json(g)
    if kind == "group_ring":
        return C.build_group_ring(R, G)
    if kind == "skew":
        return C.build_skew_group_ring(R, G, _keyed(G, d.get("action", {})))
    if kind in ("partial_skew", "partial_crossed"):
        D, alpha = _need(d, "D", "alpha")
        D, alpha = _keyed(G, D), _keyed(G, alpha)
        if kind == "partial_skew":
            return C.build_partial_skew_group_ring(R, G, C.PartialActionData(D, alpha))
        w = {}
        for ent in d.get("w", []):
            gh, vec = _need(ent, "g", "h", "w")[:2], ent["w"]
            w[(int(gh[0]), int(gh[1]))] = vec
        return C.build_partial_crossed_product(R, G, C.TwistedPartialData(D, alpha, w))
    raise InputError(f"unknown construction {kind!r}")


def element_key(x) -> str:
    return json.dumps(plain(x), separators=(",", ":"))


# --- graphs ------------------------------------------------------------------

def graph_from_json(d: dict):
    from .lpa import DirectedGraph
    return DirectedGraph.from_json(d)
