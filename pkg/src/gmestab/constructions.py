"""Explicit generator families.

* GHZ generators and the two even-N families with exponentially growing
  dimension 2^(N/2-1) (plain and cyclic).
* The maximal-dimension family ``G_1 .. G_k`` with ``k = k_min(N)``, built
  twice: from the closed-form tensor string and from the per-block tables.
  The two builders share nothing but ``k_min`` and ``P_i``; any disagreement
  is raised as :class:`ConstructionMismatch`.
* The ``H_{i,j}`` operators completing the maximal family to N generators.

Qubits and blocks are 1-based inside the builders to keep the index
arithmetic legible; the resulting words are ordinary 0-based PauliOps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .pauli import PauliOp, pauli_from_indexed, pauli_from_string
from .stabilizer import StabilizerSet


class ConstructionMismatch(AssertionError):
    def __init__(self, n: int, closed: Sequence[str], blockwise: Sequence[str]):
        self.n, self.closed, self.blockwise = n, list(closed), list(blockwise)
        diff = [(i + 1, a, b) for i, (a, b) in enumerate(zip(closed, blockwise)) if a != b]
        super().__init__(f"N={n}: closed form and block form differ at {diff}")


def k_min(n: int) -> int:
    """Smallest k with N - 1 <= k(k-1)/2, i.e. ceil((1 + sqrt(8N - 7)) / 2)."""
    if n < 2:
        raise ValueError("k_min needs N >= 2")
    m = 8 * n - 7
    c = math.isqrt(m - 1) + 1  # ceil(sqrt(m))
    k = (c + 2) // 2
    assert (k - 1) * k // 2 >= n - 1 > (k - 2) * (k - 1) // 2
    return k


def P(i: int) -> str:
    return "X" if i % 2 else "Z"


def _word(letters: str) -> PauliOp:
    return pauli_from_string("+" + letters)


# simple families ---------------------------------------------------------------

def ghz_generators(n: int) -> StabilizerSet:
    if n < 2:
        raise ValueError("GHZ generators need N >= 2")
    gens = [_word("X" * n)]
    gens += [pauli_from_indexed(f"Z{i}Z{i + 1}", n) for i in range(1, n)]
    return StabilizerSet(n, tuple(gens))


def construction2_generators(n: int, cyclic: bool = False) -> StabilizerSet:
    """N/2 + 1 generators on even N stabilizing a GME subspace of dim 2^(N/2-1)."""
    if n % 2:
        raise ValueError("only even N is supported")
    if n < 4 or (cyclic and n < 6):
        raise ValueError("need N >= 4 (N >= 6 for the cyclic variant)")

    def site(q: int) -> int:
        return (q - 1) % n + 1  # X_0 == X_N and X_{N+1} == X_1

    gens = [_word("X" * n)]
    if cyclic:
        for i in range(2, n // 2 + 2):
            a, b, c, d = (site(q) for q in (2 * i - 4, 2 * i - 3, 2 * i - 2, 2 * i - 1))
            gens.append(pauli_from_indexed(f"X{a}Z{b}Z{c}X{d}", n))
    else:
        gens.append(pauli_from_indexed("Z1Z2X3", n))
        for i in range(3, n // 2 + 1):
            gens.append(pauli_from_indexed(
                f"X{2 * i - 4}Z{2 * i - 3}Z{2 * i - 2}X{2 * i - 1}", n))
        gens.append(pauli_from_indexed(f"X{n - 2}Z{n - 1}Z{n}", n))
    return StabilizerSet(n, tuple(gens))


def five_qubit_code() -> StabilizerSet:
    return StabilizerSet.from_ops([
        pauli_from_indexed(w, 5) for w in ("X1Z2Z3X4", "X2Z3Z4X5", "X1X3Z4Z5", "Z1X2X4Z5")
    ])


def shor_code() -> StabilizerSet:
    words = ["Z1Z2", "Z2Z3", "Z4Z5", "Z5Z6", "Z7Z8", "Z8Z9",
             "X1X2X3X4X5X6", "X4X5X6X7X8X9"]
    return StabilizerSet.from_ops([pauli_from_indexed(w, 9) for w in words])


# maximal family: closed form ----------------------------------------------------

def _closed_form_strings(n: int) -> list[str]:
    k = k_min(n)
    out = []
    for i in range(1, k - 1):
        qmax = k_min(n + i) - 1
        gamma = (qmax * qmax - qmax - 2 * i + 4) // 2
        s = "1" * ((i - 1) * (i - 2) // 2) + P(i) * (i + 1)
        for q in range(i + 2, qmax + 1):
            s += "1" * (q - 3) + P(q + 1) * 2
        s += "1" * (n - gamma)
        out.append(s)
    lead = (k - 2) * (k - 3) // 2
    out.append("1" * lead + P(k - 1) * k + "1" * (n - lead - k))
    lead = (k - 1) * (k - 2) // 2
    out.append("1" * lead + P(k) * (n - lead))
    for i, s in enumerate(out, 1):
        if len(s) != n:
            raise AssertionError(f"N={n}: closed-form G_{i} has length {len(s)}")
    return out


# maximal family: block tables --------------------------------------------------

@dataclass(frozen=True)
class BlockPartition:
    """Blocks C_1..C_k as (first, last) 1-based inclusive qubit ranges."""

    n: int
    blocks: tuple[tuple[int, int], ...]

    def size(self, l: int) -> int:
        a, b = self.blocks[l - 1]
        return b - a + 1

    def qubits(self, l: int) -> range:
        a, b = self.blocks[l - 1]
        return range(a, b + 1)

    @property
    def k(self) -> int:
        return len(self.blocks)


def block_partition(n: int) -> BlockPartition:
    k = k_min(n)
    blocks = []
    for i in range(1, k + 1):
        if i <= 2 and i < k:
            blocks.append((i, i))
        elif i < k:
            blocks.append((2 + (i - 1) * (i - 2) // 2, 1 + i * (i - 1) // 2))
        else:
            blocks.append((2 + (k - 1) * (k - 2) // 2 if k > 2 else 2, n))
    part = BlockPartition(n, tuple(blocks))
    sizes = [part.size(l) for l in range(1, k + 1)]
    expected = [1] + [i - 1 for i in range(2, k)] + [n - (k - 1) * (k - 2) // 2 - 1]
    if k == 2:
        expected = [1, n - 1]
    if sizes != expected or sum(sizes) != n or min(sizes) < 1:
        raise AssertionError(f"N={n}: bad block sizes {sizes}")
    return part


def _block_strings(n: int) -> list[str]:
    part = block_partition(n)
    k = part.k

    def assemble(i: int, pieces: dict[int, str]) -> str:
        s = ""
        for l in range(1, k + 1):
            piece = pieces.get(l, "1" * part.size(l))
            if len(piece) != part.size(l):
                raise AssertionError(
                    f"N={n}: G_{i} block C_{l} piece {piece!r} has wrong size")
            s += piece
        return s

    def last_only(l: int, p: str) -> str:
        return "1" * (part.size(l) - 1) + p

    out = []
    for i in range(1, k - 1):
        pieces = {}
        if i >= 2:
            pieces[i - 1] = last_only(i - 1, P(i))
        pieces[i] = P(i) * part.size(i)
        for l in range(i + 1, k):
            if l == i + 1:
                pieces[l] = P(i + 2) + "1" * (part.size(l) - 1)
            else:
                pieces[l] = "1" * (l - i - 2) + P(l + 1) * 2 + "1" * (i - 1)
        qmax = k_min(n + i) - 1
        # a pair lands in C_k iff q_max(i) == k, i.e. the case-1 tail is >= 0
        if qmax * (qmax - 1) // 2 >= n - 1:
            rest = i - k * (k - 1) // 2 + n - 2
            if rest < 0:
                raise AssertionError(f"N={n}: G_{i} pair overruns block C_{k}")
            pieces[k] = "1" * (k - i - 2) + P(k - 1) * 2 + "1" * rest
        out.append(assemble(i, pieces))

    i = k - 1
    pieces = {}
    if k - 2 >= 1:
        pieces[k - 2] = last_only(k - 2, P(k - 1))
    pieces[k - 1] = P(k - 1) * part.size(k - 1)
    pieces[k] = P(k - 1) + "1" * (part.size(k) - 1)
    out.append(assemble(i, pieces))

    pieces = {k - 1: last_only(k - 1, P(k)), k: P(k) * part.size(k)}
    out.append(assemble(k, pieces))
    return out


def _to_set(n: int, words: Sequence[str]) -> StabilizerSet:
    return StabilizerSet(n, tuple(_word(w) for w in words))


@lru_cache(maxsize=None)
def max_generators(n: int) -> StabilizerSet:
    """The k_min(N) generators of the maximal-dimension GME stabilizer."""
    closed = _closed_form_strings(n)
    blocks = _block_strings(n)
    if closed != blocks:
        raise ConstructionMismatch(n, closed, blocks)
    return _to_set(n, closed)


@lru_cache(maxsize=None)
def blockwise_generators(n: int) -> StabilizerSet:
    return _to_set(n, _block_strings(n))


def closed_form_generators(n: int) -> StabilizerSet:
    return _to_set(n, _closed_form_strings(n))


# completion operators -------------------------------------------------------------

@dataclass(frozen=True)
class HOperator:
    i: int
    j: int
    op: PauliOp


@lru_cache(maxsize=None)
def h_operator_table(n: int) -> tuple[HOperator, ...]:
    """``H_{i,j}``: P_{i+1} on the j-th and (j+1)-th qubits of block C_{i+2}.

    i runs over the blocks C_3 .. C_k and j over the adjacent pairs inside the
    block, which gives exactly N - k_min(N) operators.
    """
    k = k_min(n)
    part = block_partition(n)
    table = []
    for i in range(1, k - 1):
        block = part.qubits(i + 2)
        for j in range(1, len(block)):
            lead = (i * i + i + 2) // 2 + (j - 1)
            tail = n - (i * i + i) // 2 - j - 2
            word = "1" * lead + P(i + 1) * 2 + "1" * tail
            if len(word) != n or tail < 0:
                raise AssertionError(f"N={n}: H_{i},{j} has length {len(word)}")
            first = lead + 1
            if first not in block or first + 1 not in block:
                raise AssertionError(f"N={n}: H_{i},{j} leaves block C_{i + 2}")
            table.append(HOperator(i, j, _word(word)))
    if len(table) != n - k:
        raise AssertionError(f"N={n}: built {len(table)} H operators, expected {n - k}")
    return tuple(table)


def h_operators(n: int) -> list[PauliOp]:
    if n - k_min(n) < 1:
        raise ValueError(f"N={n} has no completion operators (N - k_min = 0)")
    return [h.op for h in h_operator_table(n)]


def unique_matrix_independent(ops: Sequence[PauliOp]) -> bool:
    """Sufficient independence test: each operator owns a qubit where it
    carries X (Z) while every other operator carries Z (X) or the identity."""
    for p in ops:
        if p.x & p.z:
            raise ValueError(f"{p} contains Y")
    for a_idx, a in enumerate(ops):
        others_x = others_z = 0
        for b_idx, b in enumerate(ops):
            if b_idx != a_idx:
                others_x |= b.x
                others_z |= b.z
        owns = (a.x & ~others_x) | (a.z & ~others_z)
        if not owns:
            return False
    return True
