import numpy as np
import pytest

from helpers import brute_prime

from graded_prime_lab.constructions import (PartialActionData, TwistedPartialData, build_group_ring,
                                            build_matrix_graded, build_partial_crossed_product,
                                            build_partial_skew_group_ring, build_skew_group_ring, connell_decision,
                                            partial_invariance, partial_prime_conditions)
from graded_prime_lab.errors import AxiomViolation, InputError, NotInvertible, NotSUnital
from graded_prime_lab.graded import classify_grading
from graded_prime_lab.groups import IntegerLattice, cyclic, symmetric_group
from graded_prime_lab.modring import direct_sum, is_prime, zero_ring_on, zmod
from graded_prime_lab.primality import search_np_datum

F2, F3 = zmod(2), zmod(3)
I2 = [[1, 0], [0, 1]]


def partial_on_two_points():
    """Rotation of Z/3 restricted to {0, 1}: one orbit with trivial stabilizer."""
    D = {0: I2, 1: [[0, 1]], 2: [[1, 0]]}
    alpha = {0: I2, 1: [[0, 1], [0, 0]], 2: [[0, 0], [1, 0]]}
    return build_partial_skew_group_ring(direct_sum([F2, F2]), cyclic(3), PartialActionData(D, alpha))


def test_group_ring_shapes_and_flags():
    S = build_group_ring(F3, symmetric_group(3))
    assert S.k == 6 and S.ring.is_unital()
    f = classify_grading(S)
    assert f.strong and f.epsilon_strong


def test_swap_action_gives_matrix_ring():
    S = build_skew_group_ring(direct_sum([F2, F2]), cyclic(2), {0: I2, 1: [[0, 1], [1, 0]]})
    assert is_prime(S.ring).verdict and brute_prime(S.ring)[0]
    assert classify_grading(S).strong


def test_bad_action_rejected():
    with pytest.raises(InputError):
        build_skew_group_ring(direct_sum([F2, F2]), cyclic(2), {0: I2, 1: [[1, 1], [0, 1]]})
    with pytest.raises(InputError):
        build_skew_group_ring(direct_sum([F2, F2]), cyclic(3), {0: I2, 1: [[0, 1], [1, 0]], 2: [[0, 1], [1, 0]]})


def test_partial_skew_on_two_points():
    S = partial_on_two_points()
    assert S.k == 4
    f = classify_grading(S)
    assert f.epsilon_strong and not f.strong
    assert is_prime(S.ring).verdict == brute_prime(S.ring)[0] is True


def test_partial_axioms_checked():
    D = {0: I2, 1: [[1, 0]], 2: [[0, 1]]}
    alpha = {0: I2, 1: [[0, 1], [0, 0]], 2: [[0, 0], [1, 0]]}
    with pytest.raises(AxiomViolation):
        build_partial_skew_group_ring(direct_sum([F2, F2]), cyclic(3), PartialActionData(D, alpha))
    with pytest.raises(AxiomViolation):
        build_partial_skew_group_ring(direct_sum([F2, F2]), cyclic(3),
                                      PartialActionData({0: [[1, 0]], 1: [], 2: []}, {0: I2}))


def test_partial_translation_on_Z():
    eye = np.eye(3, dtype=np.int64)
    D = {(g,): [eye[i] for i in range(3) if 0 <= i - g < 3] for g in range(-2, 3)}
    alpha = {}
    for (g,) in D:
        A = np.zeros((3, 3), dtype=np.int64)
        for i in range(3):
            if 0 <= i + g < 3:
                A[i, i + g] = 1
        alpha[(g,)] = A
    S = build_partial_skew_group_ring(direct_sum([F2] * 3), IntegerLattice(1), PartialActionData(D, alpha))
    assert S.k == 9 and len(S.support) == 5
    assert classify_grading(S).nearly_epsilon_strong
    assert is_prime(S.ring).verdict


def test_partial_invariance():
    S = partial_on_two_points()
    R = S.blocks.R
    assert partial_invariance(S, R.full())
    assert partial_invariance(S, R.zero_sub())
    assert not partial_invariance(S, R.submodule([[1, 0]]))


def test_partial_prime_conditions_from_search():
    S = build_group_ring(F2, cyclic(2))
    d = search_np_datum(S)
    assert partial_prime_conditions(S, d)["holds"]


def test_twisted_group_algebra_is_a_field():
    D = {0: [[1]], 1: [[1]]}
    alpha = {0: [[1]], 1: [[1]]}
    T = build_partial_crossed_product(F3, cyclic(2), TwistedPartialData(D, alpha, {(1, 1): [2]}))
    assert is_prime(T.ring).verdict and brute_prime(T.ring)[0]
    U = build_partial_crossed_product(F3, cyclic(2), TwistedPartialData(D, alpha, {}))
    assert not is_prime(U.ring).verdict
    with pytest.raises(NotInvertible):
        build_partial_crossed_product(F3, cyclic(2), TwistedPartialData(D, alpha, {(1, 1): [0]}))


def test_matrix_builder():
    with pytest.raises(InputError):
        build_matrix_graded(F2, 0)
    with pytest.raises(InputError):
        build_matrix_graded(F2, 2, "Q")
    S = build_matrix_graded(F3, 3, "ZmodN")
    assert S.group.order == 3 and classify_grading(S).strong


def test_connell_paths():
    assert connell_decision(True, "Z x F2")["verdict"] == "prime"
    out = connell_decision(True, "C2 x Z")
    assert out["verdict"] == "not_prime" and out["reason"] == "finite_normal_subgroup"
    assert connell_decision(False, "Z")["reason"] == "ring_not_prime"
    assert connell_decision(F3, "C2")["cross_check"] == "not_prime"
    assert connell_decision(F3, "1")["cross_check"] == "prime"
    with pytest.raises(NotSUnital):
        connell_decision(zero_ring_on(2), "C2")
