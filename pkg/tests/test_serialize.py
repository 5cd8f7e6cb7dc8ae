import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from graded_prime_lab.constructions import build_group_ring, build_matrix_graded
from graded_prime_lab.errors import InputError
from graded_prime_lab.groups import IntegerLattice, cyclic, symmetric_group
from graded_prime_lab.modring import direct_sum, matrix_ring, zmod
from graded_prime_lab.serialize import (dumps, graded_equal, graded_from_json, graded_to_json, group_from_json,
                                        group_to_json, loads, plain, ring_from_json, ring_to_json, rings_equal)


def test_plain_and_dumps():
    assert plain({"a": np.int64(3), 1: (np.array([1, 2]), {5})}) == {"a": 3, "1": [[1, 2], [5]]}
    assert dumps({"b": 1, "a": [True, None]}) == '{"a":[true,null],"b":1}\n'
    with pytest.raises(InputError):
        plain({"x": 0.5})


def test_floats_rejected_on_input():
    with pytest.raises(InputError):
        loads('{"m": 2.0}')
    with pytest.raises(InputError):
        loads("{not json")


def test_group_round_trips():
    for G in (cyclic(5), symmetric_group(3)):
        assert group_from_json(json.loads(dumps(group_to_json(G)))) == G
    assert group_from_json(group_to_json(IntegerLattice(2))) == IntegerLattice(2)
    assert group_from_json("Z") == IntegerLattice(1)
    with pytest.raises(InputError):
        group_from_json({"kind": "weird"})


def test_ring_presets_and_round_trip():
    R = ring_from_json({"preset": "MatrixRing", "n": 2, "base": {"preset": "Zmod", "m": 3}})
    assert rings_equal(R, matrix_ring(2, zmod(3)))
    D = ring_from_json({"preset": "DirectSum", "parts": [{"preset": "Zmod", "m": 2}] * 2})
    assert rings_equal(D, direct_sum([zmod(2), zmod(2)]))
    assert rings_equal(ring_from_json(loads(dumps(ring_to_json(R)))), R)
    with pytest.raises(InputError):
        ring_from_json({"modulus": 2, "rank": 2, "mul": [[[1]]]})


def test_graded_round_trip_is_canonical():
    for S in (build_matrix_graded(zmod(2), 2, "Z"), build_group_ring(zmod(3), cyclic(3))):
        text = dumps(graded_to_json(S))
        T = graded_from_json(loads(text))
        assert graded_equal(S, T)
        assert dumps(graded_to_json(T)) == text


def test_constructions_from_json():
    S = graded_from_json({"construct": "group_ring", "ring": {"preset": "Zmod", "m": 2},
                          "group": {"kind": "symbolic", "expr": "C2"}})
    assert S.k == 2
    M = graded_from_json({"construct": "matrix", "ring": {"preset": "Zmod", "m": 2}, "n": 2, "mode": "Z"})
    assert graded_equal(M, build_matrix_graded(zmod(2), 2, "Z"))
    L = graded_from_json({"construct": "lpa", "ring": {"preset": "Zmod", "m": 2},
                          "graph": {"vertices": ["v1", "v2"], "edges": [{"name": "f", "src": "v1", "dst": "v2"}]}})
    assert L.k == 4
    with pytest.raises(InputError):
        graded_from_json({"construct": "nope", "ring": {"preset": "Zmod", "m": 2}, "group": "C2"})


@settings(max_examples=50, deadline=None)
@given(st.recursive(st.integers(-10 ** 6, 10 ** 6) | st.booleans() | st.none() | st.text(max_size=5),
                    lambda kids: st.lists(kids, max_size=4) | st.dictionaries(st.text(max_size=4), kids, max_size=4),
                    max_leaves=20))
def test_dumps_loads_identity(obj):
    assert loads(dumps(obj)) == obj
    assert dumps(loads(dumps(obj))) == dumps(obj)
