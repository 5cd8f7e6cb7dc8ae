"""Deterministic corpus of nearly epsilon-strongly graded rings, with harness outcomes.

Cases are drawn round-robin from a fixed list of families with a seeded
``random.Random``; everything downstream of generation is deterministic, so
the same seed gives byte-identical files.
"""
from __future__ import annotations

import logging
import os
import random
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from . import constructions as C
from .errors import CapExceeded, LabError, TheoremViolation
from .graded import (GradedRing, classify_grading, graded_direct_sum, induced_quotient_grading, is_G_prime)
from .groups import FiniteGroup, IntegerLattice, concrete, cyclic, make_subgroup, parse_group_expr
from .lpa import build_lpa_acyclic, random_acyclic_graph
from .modring import FiniteRing, direct_sum, is_prime, zmod
from .primality import SEARCH_ELEMENT_CAP, main_theorem_harness
from .serialize import dumps, graded_from_json, graded_to_json

log = logging.getLogger(__name__)

CORPUS_SEED = 20160907
CORPUS_COUNT = 48
CASE_RANK_CAP = 36

RING_NAMES = ("F2", "F3", "Z4", "F2+F2")
GROUP_NAMES = ("1", "C2", "C3", "C4", "C2 x C2")


def ring_by_name(name: str) -> FiniteRing:
    if name == "F2+F2":
        return direct_sum([zmod(2), zmod(2)])
    return zmod({"F2": 2, "F3": 3, "Z4": 4}[name])


def group_by_name(name: str):
    return concrete(parse_group_expr(name))


def _power_ring(p: int, n: int) -> FiniteRing:
    return direct_sum([zmod(p)] * n) if n > 1 else zmod(p)


def _rotation(n: int, g: int) -> np.ndarray:
    A = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        A[i, (i + g) % n] = 1
    return A


# --- families: each returns (params, graded ring) ------------------------------------

def fam_group_ring(rng: random.Random):
    R, G = rng.choice(RING_NAMES), rng.choice(GROUP_NAMES)
    return {"ring": R, "group": G}, C.build_group_ring(ring_by_name(R), group_by_name(G))


def fam_skew(rng: random.Random):
    p, n = rng.choice(((2, 2), (2, 3), (3, 2)))
    act = {g: _rotation(n, g) for g in range(n)}
    return {"p": p, "n": n, "action": "rotation"}, C.build_skew_group_ring(_power_ring(p, n), cyclic(n), act)


def fam_partial_cyclic(rng: random.Random):
    """Rotation of Z/n restricted to the ideal spanned by the points of X."""
    p, n = rng.choice((2, 3)), rng.choice((2, 3, 4))
    X = sorted(rng.sample(range(n), rng.randint(2, n)))
    pos = {x: i for i, x in enumerate(X)}
    k = len(X)
    D, alpha = {}, {}
    for g in range(n):
        D[g] = [np.eye(k, dtype=np.int64)[pos[x]] for x in X if (x - g) % n in pos]
        A = np.zeros((k, k), dtype=np.int64)
        for x in X:
            if (x + g) % n in pos:
                A[pos[x], pos[(x + g) % n]] = 1
        alpha[g] = A
    S = C.build_partial_skew_group_ring(_power_ring(p, k), cyclic(n), C.PartialActionData(D, alpha))
    return {"p": p, "n": n, "X": X}, S


def fam_partial_Z(rng: random.Random):
    """Translation on Z restricted to n consecutive points: finitely many nonzero D_g."""
    p, n = rng.choice((2, 3)), rng.choice((2, 3, 4))
    eye = np.eye(n, dtype=np.int64)
    D = {(g,): [eye[i] for i in range(n) if 0 <= i - g < n] for g in range(1 - n, n)}
    alpha = {}
    for (g,) in D:
        A = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            if 0 <= i + g < n:
                A[i, i + g] = 1
        alpha[(g,)] = A
    S = C.build_partial_skew_group_ring(_power_ring(p, n), IntegerLattice(1), C.PartialActionData(D, alpha))
    return {"p": p, "n": n}, S


def fam_matrix(rng: random.Random):
    R, n, mode = rng.choice(("F2", "F3", "Z4")), rng.choice((1, 2, 3)), rng.choice(("Z", "ZmodN"))
    return {"ring": R, "n": n, "mode": mode}, C.build_matrix_graded(ring_by_name(R), n, mode)


def fam_lpa(rng: random.Random):
    E = random_acyclic_graph(rng, 4, 4)
    R = rng.choice(("F2", "Z4"))
    real = build_lpa_acyclic(E, ring_by_name(R), classify=False)
    return {"ring": R, "graph": E.to_json()}, real.S


def fam_direct_sum(rng: random.Random):
    G = rng.choice(("C2", "C3"))
    rs = [rng.choice(("F2", "F2+F2")) for _ in range(2)] if rng.randrange(2) else ["F3", "F3"]
    parts = [C.build_group_ring(ring_by_name(r), group_by_name(G)) for r in rs]
    return {"group": G, "rings": rs}, graded_direct_sum(parts)


def fam_quotient(rng: random.Random):
    kind = rng.choice(("group_ring", "matrix", "lpa"))
    if kind == "group_ring":
        R = rng.choice(("F2", "F3"))
        G = cyclic(4)
        S = C.build_group_ring(ring_by_name(R), G)
        return {"from": kind, "ring": R, "group": "C4", "N": [0, 2]}, induced_quotient_grading(S, make_subgroup(G, [0, 2]))
    if kind == "matrix":
        R, n = rng.choice(("F2", "F3")), 3
        S = C.build_matrix_graded(ring_by_name(R), n, "Z")
        return {"from": kind, "ring": R, "n": n, "N": [[2]]}, induced_quotient_grading(S, [[2]])
    E = random_acyclic_graph(rng, 4, 4)
    R = rng.choice(("F2", "Z4"))
    S = build_lpa_acyclic(E, ring_by_name(R), classify=False).S
    return {"from": kind, "ring": R, "graph": E.to_json(), "N": [[2]]}, induced_quotient_grading(S, [[2]])


FAMILIES: List[Tuple[str, Callable]] = [
    ("group_ring", fam_group_ring), ("skew", fam_skew), ("partial_cyclic", fam_partial_cyclic),
    ("partial_Z", fam_partial_Z), ("matrix", fam_matrix), ("lpa", fam_lpa),
    ("direct_sum", fam_direct_sum), ("quotient", fam_quotient),
]


@dataclass
class Case:
    name: str
    family: str
    params: dict
    S: GradedRing

    def to_json(self) -> dict:
        return {"name": self.name, "family": self.family, "params": self.params, "graded": graded_to_json(self.S)}


def generate_cases(seed: int = CORPUS_SEED, count: int = CORPUS_COUNT, max_tries: int = 8):
    """(cases, skipped); a draw that exceeds a cap or is not nearly eps-strong is logged and redrawn."""
    rng = random.Random(seed)
    cases, skipped = [], []
    for i in range(count):
        fam, fn = FAMILIES[i % len(FAMILIES)]
        for t in range(max_tries):
            tag = f"c{i:03d}_{fam}"
            try:
                params, S = fn(rng)
                if S.k > CASE_RANK_CAP:
                    raise CapExceeded(f"rank {S.k} above {CASE_RANK_CAP}", witness={"rank": S.k})
                if isinstance(S.group, FiniteGroup) and S.m ** S.k > SEARCH_ELEMENT_CAP:
                    # the NP search enumerates pieces of S; keep the whole ring under its cap
                    raise CapExceeded(f"|S| = {S.m}^{S.k} above the search cap", witness={"m": S.m, "k": S.k})
                if not classify_grading(S).nearly_epsilon_strong:
                    skipped.append({"name": tag, "try": t, "reason": "not nearly epsilon-strong", "params": params})
                    log.info("%s: redraw, not nearly epsilon-strong", tag)
                    continue
            except CapExceeded as ex:
                skipped.append({"name": tag, "try": t, "reason": f"cap: {ex}"})
                log.warning("%s: skipped draw (%s)", tag, ex)
                continue
            cases.append(Case(tag, fam, params, S))
            break
    return cases, skipped


# --- evaluation -----------------------------------------------------------------------

def evaluate(S: GradedRing) -> dict:
    flags = classify_grading(S)
    out = {"rank": S.k, "modulus": S.m, "support": len(S.support), "flags": flags.as_dict()}
    if isinstance(S.group, FiniteGroup):
        h = main_theorem_harness(S)
        out["group_order"] = S.group.order
        out["harness"] = {"assertions": h["assertions"], "equivalent": h["equivalent"],
                          "observations": h["observations"], "data": h["data"]}
        out["prime"] = not h["assertions"]["a"]
    else:
        g, p = is_G_prime(S).verdict, is_prime(S.ring).verdict
        out["shortcut"] = {"S_e_G_prime": g, "prime": p, "agree": g == p}
        out["prime"] = p
    return out


def _evaluate_payload(payload: dict) -> dict:
    S = graded_from_json(payload["graded"])
    row = {"name": payload["name"], "family": payload["family"]}
    try:
        row.update(evaluate(S))
        row["status"] = "ok"
    except TheoremViolation as ex:
        row.update(status="theorem_violation", error=str(ex))
    except CapExceeded as ex:
        row.update(status="cap_exceeded", error=str(ex))
    except LabError as ex:
        row.update(status="input_error", error=str(ex))
    return row


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("GRADED_PRIME_LAB_THREADS", "1")))
    except ValueError:
        return 1


def _write_atomic(path: str, text: str):
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def run_corpus(seed: int = CORPUS_SEED, count: int = CORPUS_COUNT, out_dir: Optional[str] = None,
               threads: Optional[int] = None) -> dict:
    cases, skipped = generate_cases(seed, count)
    payloads = [c.to_json() for c in cases]
    n = threads or worker_count()
    if n > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=n) as ex:
            rows = list(ex.map(_evaluate_payload, payloads))
    else:
        rows = [_evaluate_payload(p) for p in payloads]
    status: Dict[str, int] = {}
    for r in rows:
        status[r["status"]] = status.get(r["status"], 0) + 1
    summary = {
        "seed": seed, "count": count, "cases": rows, "skipped": skipped, "status": status,
        "harness_cases": sum("harness" in r for r in rows),
        "all_equivalent": all(r.get("harness", {}).get("equivalent", True) for r in rows),
        "shortcut_agree": all(r.get("shortcut", {}).get("agree", True) for r in rows),
    }
    if out_dir is not None:
        os.makedirs(os.path.join(out_dir, "cases"), exist_ok=True)
        for p in payloads:
            _write_atomic(os.path.join(out_dir, "cases", p["name"] + ".json"), dumps(p))
        _write_atomic(os.path.join(out_dir, "summary.json"), dumps(summary))
    return summary
