import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmestab.pauli import (
    PauliOp,
    apply_pauli,
    commutes,
    format_pauli_text,
    load_paulis,
    local_anticommute_mask,
    multiply,
    parse_pauli_text,
    pauli_from_indexed,
    pauli_from_string,
    pauli_matrix,
    pauli_matrix_kron,
    paulis_from_json,
    paulis_to_json,
    product,
    symplectic_matrix,
)


@st.composite
def paulis(draw, n=None, hermitian=False):
    n = draw(st.integers(1, 5)) if n is None else n
    x = draw(st.integers(0, (1 << n) - 1))
    z = draw(st.integers(0, (1 << n) - 1))
    if hermitian:
        phase = (x & z).bit_count() + 2 * draw(st.integers(0, 1))
    else:
        phase = draw(st.integers(0, 3))
    return PauliOp(n, x, z, phase)


@st.composite
def pauli_pairs(draw, count=2):
    n = draw(st.integers(1, 5))
    return [draw(paulis(n)) for _ in range(count)]


def test_parse_and_print():
    p = pauli_from_string("-XYZ1")
    assert p.letters == "XYZ1"
    assert p.sign == -1
    assert str(p) == "-XYZ1"
    assert str(pauli_from_string("iZ")) == "+iZ"
    assert pauli_from_string("XIZ").letters == "X1Z"
    assert pauli_from_string(" X X ") == pauli_from_string("XX")
    with pytest.raises(ValueError):
        pauli_from_string("XQ")
    with pytest.raises(ValueError):
        pauli_from_string("+")


def test_indexed_notation_is_one_based():
    p = pauli_from_indexed("X1Z2Z3X4", 5)
    assert p.letters == "XZZX1"
    assert pauli_from_indexed("Z2", 3, sign=-1).letters == "1Z1"
    assert pauli_from_indexed("Z2", 3, sign=-1).sign == -1


def test_single_qubit_algebra():
    x, y, z = (pauli_from_string(c) for c in "XYZ")
    assert x * z == pauli_from_string("-iY")
    assert z * x == pauli_from_string("iY")
    assert x * x == PauliOp.identity(1)
    assert not x.commutes(z)
    assert y.is_hermitian() and y.sign == 1


def test_matrix_convention_leftmost_is_most_significant():
    p = pauli_from_string("X1")
    e = np.zeros(4)
    e[0] = 1  # |00>
    out = apply_pauli(p, e)
    assert out[2] == 1  # |10>


@given(paulis())
def test_dense_matches_kron_oracle(p):
    np.testing.assert_allclose(pauli_matrix(p), pauli_matrix_kron(p), atol=1e-12)


@given(pauli_pairs())
def test_product_matches_matrix_product(ab):
    a, b = ab
    np.testing.assert_allclose(pauli_matrix(a * b), pauli_matrix_kron(a) @ pauli_matrix_kron(b),
                               atol=1e-12)


@given(pauli_pairs(3))
def test_associativity(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)
    assert product([a, b, c]) == multiply(multiply(a, b), c)


@given(pauli_pairs())
def test_commutation_matches_matrices(ab):
    a, b = ab
    ma, mb = pauli_matrix_kron(a), pauli_matrix_kron(b)
    assert commutes(a, b) == np.allclose(ma @ mb, mb @ ma)
    assert commutes(a, b) == (local_anticommute_mask(a, b).bit_count() % 2 == 0)


@given(paulis())
def test_hermiticity_and_sign(p):
    m = pauli_matrix_kron(p)
    assert p.is_hermitian() == np.allclose(m, m.conj().T)
    if p.is_hermitian():
        np.testing.assert_allclose(m @ m, np.eye(m.shape[0]), atol=1e-12)
        assert p.sign in (1, -1)
        assert (-p).sign == -p.sign
    else:
        with pytest.raises(ValueError):
            p.sign


@given(paulis())
def test_string_round_trip(p):
    assert pauli_from_string(str(p)) == p


@given(st.lists(paulis(n=4, hermitian=True), min_size=1, max_size=6))
def test_text_and_json_round_trip(ops):
    assert parse_pauli_text(format_pauli_text(ops, header="gens")) == ops
    assert paulis_from_json(paulis_to_json(ops)) == ops
    assert load_paulis(format_pauli_text(ops)) == ops


def test_text_comments_and_blank_lines():
    ops = parse_pauli_text("# five-qubit code\n\nXZZX1  # first\n1XZZX\n")
    assert [o.letters for o in ops] == ["XZZX1", "1XZZX"]


def test_symplectic_rows():
    m = symplectic_matrix([pauli_from_string("XZ"), pauli_from_string("Y1")])
    assert m.n_cols == 4
    assert m.to_strings() == ["1001", "1010"]


def test_width_mismatch_raises():
    with pytest.raises(ValueError):
        pauli_from_string("XX") * pauli_from_string("X")


@given(paulis(), st.integers(0, 2**32))
def test_apply_matches_matrix(p, seed):
    r = np.random.default_rng(seed)
    v = r.normal(size=(1 << p.n, 2)) + 1j * r.normal(size=(1 << p.n, 2))
    np.testing.assert_allclose(apply_pauli(p, v), pauli_matrix_kron(p) @ v, atol=1e-12)
