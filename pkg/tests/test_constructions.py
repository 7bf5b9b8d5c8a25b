import math

import numpy as np
import pytest

from gmestab.constructions import (
    ConstructionMismatch,
    _block_strings,
    _closed_form_strings,
    block_partition,
    blockwise_generators,
    closed_form_generators,
    construction2_generators,
    ghz_generators,
    h_operator_table,
    h_operators,
    k_min,
    max_generators,
    unique_matrix_independent,
)
from gmestab.gme import is_gme_rank
from gmestab.pauli import commutes, pauli_from_string
from gmestab.stabilizer import codeword_basis, validate


def k_min_oracle(n):
    k = 1
    while k * (k - 1) // 2 < n - 1:
        k += 1
    return k


def test_k_min_against_search_and_float_formula():
    for n in range(2, 5000):
        assert k_min(n) == k_min_oracle(n)
        assert k_min(n) == math.ceil((1 + math.sqrt(8 * n - 7)) / 2)
    with pytest.raises(ValueError):
        k_min(1)


@pytest.mark.parametrize("n, words", [
    (2, ["XX", "ZZ"]),
    (3, ["XX1", "ZZZ", "1XX"]),
    (4, ["XXZZ", "ZZZ1", "1XXX"]),
    (5, ["XXZZ1", "ZZZ11", "1XXXX", "111ZZ"]),
    (7, ["XXZZ1XX", "ZZZ1XX1", "1XXXX11", "111ZZZZ"]),
])
def test_max_generators_known(n, words):
    assert [g.letters for g in max_generators(n).generators] == words
    assert all(g.sign == 1 for g in max_generators(n).generators)


def test_h_operators_n7():
    assert [h.letters for h in h_operators(7)] == ["11ZZ111", "1111XX1", "11111XX"]
    assert [(h.i, h.j) for h in h_operator_table(7)] == [(1, 1), (2, 1), (2, 2)]


@pytest.mark.parametrize("n", range(2, 61))
def test_max_family(n):
    s = max_generators(n)
    assert s.k == k_min(n)
    assert _closed_form_strings(n) == _block_strings(n)
    assert blockwise_generators(n) == closed_form_generators(n) == s
    rep = validate(s)
    assert rep.valid and rep.independent
    assert rep.subspace_dim == 2 ** (n - k_min(n))
    assert is_gme_rank(s)
    assert s.uses_only_xz()
    assert unique_matrix_independent(s.generators)


@pytest.mark.parametrize("n", range(4, 41))
def test_h_completion(n):
    hs = h_operators(n)
    gens = max_generators(n).generators
    assert len(hs) == n - k_min(n)
    assert all(commutes(h, g) for h in hs for g in gens + tuple(hs))
    full = max_generators(n).extend(hs)
    rep = validate(full)
    assert rep.independent and rep.subspace_dim == 1
    for idx, g in enumerate(gens):
        others = [o for j, o in enumerate(full.generators) if j != idx]
        owns = (g.x & ~_union(others, "x")) | (g.z & ~_union(others, "z"))
        assert owns, f"G_{idx + 1} lost its unique matrices"
    for h in hs:
        assert h.letter(0) == "1"


def _union(ops, attr):
    acc = 0
    for o in ops:
        acc |= getattr(o, attr)
    return acc


def test_no_h_operators_when_family_is_complete():
    for n in (2, 3):
        with pytest.raises(ValueError):
            h_operators(n)


def test_block_sizes():
    part = block_partition(7)
    assert [part.size(l) for l in range(1, part.k + 1)] == [1, 1, 2, 3]
    for n in range(2, 200):
        part = block_partition(n)
        assert sum(part.size(l) for l in range(1, part.k + 1)) == n


def test_mismatch_error_reports_positions():
    err = ConstructionMismatch(3, ["XX1", "ZZZ"], ["XX1", "ZZ1"])
    assert err.n == 3 and "(2, 'ZZZ', 'ZZ1')" in str(err)


def test_dense_state_n3_is_stabilized():
    s = max_generators(3)
    v = codeword_basis(s)
    assert v.shape == (8, 1)


def test_ghz_family():
    for n in range(2, 12):
        s = ghz_generators(n)
        assert validate(s).subspace_dim == 1 and is_gme_rank(s)


@pytest.mark.parametrize("n, cyclic", [(n, c) for n in range(4, 17, 2) for c in (False, True)
                                       if n >= 6 or not c])
def test_construction2(n, cyclic):
    s = construction2_generators(n, cyclic)
    assert s.k == n // 2 + 1
    assert validate(s).subspace_dim == 2 ** (n // 2 - 1)
    assert is_gme_rank(s)


def test_construction2_small_instances():
    assert [g.letters for g in construction2_generators(4).generators] == ["XXXX", "ZZX1", "1XZZ"]
    assert [g.letters for g in construction2_generators(6).generators] == \
        ["XXXXXX", "ZZX111", "1XZZX1", "111XZZ"]
    cyc = [g.letters for g in construction2_generators(6, cyclic=True).generators]
    assert cyc[1] == "ZZX11X" and cyc[-1] == "X11XZZ"


def test_construction2_errors():
    with pytest.raises(ValueError):
        construction2_generators(5)
    with pytest.raises(ValueError):
        construction2_generators(4, cyclic=True)
