import itertools

import numpy as np
import pytest

from gmestab.bell import canonical_observables
from gmestab.constructions import h_operator_table, k_min
from gmestab.faces import (
    Behaviour,
    affine_rank,
    analyze_face,
    behaviour,
    face_dimension,
    face_labels,
    sign_patterns,
    signed_stabilizer,
    signed_state,
)
from gmestab.stabilizer import validate


@pytest.mark.parametrize("n, expected", [(3, 0), (4, 1), (5, 1), (6, 3), (7, 7), (8, 7)])
def test_face_dimension(n, expected):
    assert face_dimension(n) == expected == 2 ** (n - k_min(n)) - 1


@pytest.mark.parametrize("n", range(4, 9))
def test_signed_stabilizers_are_states(n):
    for signs in sign_patterns(n):
        rep = validate(signed_stabilizer(n, signs))
        assert rep.valid and rep.subspace_dim == 1


def test_all_plus_is_the_unsigned_set():
    s = signed_stabilizer(7, (0, 0, 0))
    assert [g.sign for g in s.generators] == [1] * 7
    assert s.generators[4:] == tuple(h.op for h in h_operator_table(7))


def test_n4_minus_state_orthogonal():
    plus = signed_state(4, (0,))
    minus = signed_state(4, (1,))
    assert abs(np.vdot(plus, minus)) <= 1e-10


def test_n7_states_orthogonal():
    rep = analyze_face(7)
    assert len(rep.values) == 8
    assert rep.max_overlap <= 1e-10


@pytest.mark.parametrize("n", range(4, 9))
def test_behaviour_values(n):
    obs = canonical_observables(n)
    labels = face_labels(n)
    n_h = n - k_min(n)
    for signs in sign_patterns(n):
        b = behaviour(signed_state(n, signs), obs, labels)
        # single H labels come first, in table order, and report the signs
        np.testing.assert_allclose(b.values[:n_h], [(-1) ** s for s in signs], atol=1e-10)
        # the G~ label is +1
        assert b.values[-1] == pytest.approx(1.0, abs=1e-10)
        # products factorize
        idx = n_h
        for r in range(2, n_h + 1):
            for subset in itertools.combinations(range(n_h), r):
                assert b.values[idx] == pytest.approx(np.prod(b.values[list(subset)]), abs=1e-10)
                idx += 1


def test_report_fields():
    rep = analyze_face(6)
    assert rep.passed and rep.signs_recovered
    assert max(rep.residuals) <= 1e-9
    assert rep.to_json()["face_dimension"] == 3


@pytest.mark.parametrize("g_index", [0, 1, 2, 3])
def test_choice_of_g_label_irrelevant(g_index):
    assert analyze_face(6, g_index=g_index).dimension == 3


def test_sign_vector_checks():
    with pytest.raises(ValueError):
        signed_stabilizer(7, (0, 1))
    with pytest.raises(ValueError):
        signed_stabilizer(7, (0, 1, 2))


def test_behaviour_invariants():
    with pytest.raises(ValueError):
        Behaviour((((0, 0),),), np.array([1.5]))
    with pytest.raises(ValueError):
        Behaviour((((0, 0),),), np.array([0.5, 0.5]))
    b = Behaviour((((0, 0),), ((1, 1),)), np.array([0.25, -1.0]))
    assert b[((1, 1),)] == -1.0


def test_affine_rank():
    assert affine_rank(np.array([[1.0, 2.0]])) == 0
    assert affine_rank(np.array([[0, 0], [1, 0], [0, 1], [1, 1.0]])) == 2
    assert affine_rank(np.array([[0, 0, 0], [1, 1, 1], [2, 2, 2.0]])) == 1
