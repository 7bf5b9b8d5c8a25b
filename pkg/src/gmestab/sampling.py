"""Random Pauli words and random valid stabilizer generator sets."""

from __future__ import annotations

import numpy as np

from .gf2 import GF2Matrix, gf2_kernel, in_span
from .pauli import PauliOp, product
from .stabilizer import StabilizerSet


def random_pauli(n: int, rng, hermitian: bool = True) -> PauliOp:
    rng = np.random.default_rng(rng)
    x = int(rng.integers(0, 1 << n))
    z = int(rng.integers(0, 1 << n))
    if hermitian:
        phase = (x & z).bit_count() + 2 * int(rng.integers(0, 2))
    else:
        phase = int(rng.integers(0, 4))
    return PauliOp(n, x, z, phase)


def _swap_halves(row: int, n: int) -> int:
    mask = (1 << n) - 1
    return (row >> n) | ((row & mask) << n)


def random_stabilizer(n: int, k: int, rng, extra: int = 0) -> StabilizerSet:
    """k independent commuting Hermitian words with random signs (Y allowed),
    followed by ``extra`` redundant products of them.

    Independence of the symplectic rows rules out -1 in the group, so the
    result always validates with dimension 2^(n - k).
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    rng = np.random.default_rng(rng)
    rows: list[int] = []
    while len(rows) < k:
        # symplectic complement of the current rows
        dual = GF2Matrix(tuple(_swap_halves(r, n) for r in rows), 2 * n)
        basis = gf2_kernel(dual).rows
        pick = rng.integers(0, 2, size=len(basis))
        v = 0
        for b, on in zip(basis, pick):
            if on:
                v ^= b
        if v and not in_span(v, rows):
            rows.append(v)
    mask = (1 << n) - 1
    gens = []
    for r in rows:
        x, z = r & mask, r >> n
        gens.append(PauliOp(n, x, z, (x & z).bit_count() + 2 * int(rng.integers(0, 2))))
    for _ in range(extra):
        size = int(rng.integers(2, k + 1)) if k > 1 else 1
        idx = rng.choice(k, size=size, replace=False)
        gens.append(product([gens[i] for i in idx], n))
    return StabilizerSet(n, tuple(gens))


def random_graph(n: int, rng, p: float = 0.5) -> np.ndarray:
    rng = np.random.default_rng(rng)
    upper = np.triu(rng.random((n, n)) < p, 1)
    return (upper | upper.T).astype(int)
