"""Genuine multipartite entanglement of stabilizer subspaces.

For each pair of generators the qubits on which their single-site factors
anticommute form an even-weight vector of Z_2^N.  The subspace is GME iff
every nontrivial bipartition is odd on at least one of these vectors, which
happens iff they span the whole even-weight subspace (dimension N - 1).
Both tests are implemented here and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_LIMITS
from .gf2 import GF2Matrix, dot, gf2_rank
from .pauli import PauliOp, local_anticommute_mask
from .stabilizer import InvalidStabilizer, ResourceLimit, StabilizerSet, validate


@dataclass(frozen=True)
class KSubspace:
    vectors: GF2Matrix
    dim: int
    pairs: tuple[tuple[int, int], ...]

    def vector(self, i: int, j: int) -> int:
        """v_{i,j} for 0-based generator indices i < j."""
        return self.vectors.rows[self.pairs.index((i, j))]


def canonical_bipartition(phi: int, n: int) -> int:
    """Identify phi with its complement by clearing the lowest bit."""
    return phi ^ ((1 << n) - 1) if phi & 1 else phi


def is_nontrivial(phi: int, n: int) -> bool:
    return 0 < phi < (1 << n) - 1


def h_form(phi: int, v: int, n: int | None = None) -> int:
    if n is not None and (phi >> n or v >> n):
        raise ValueError("width mismatch")
    return dot(phi, v)


def pair_vectors(s: StabilizerSet) -> KSubspace:
    g = s.generators
    rows, pairs = [], []
    for i in range(len(g)):
        for j in range(i + 1, len(g)):
            v = local_anticommute_mask(g[i], g[j])
            if v.bit_count() % 2:
                raise InvalidStabilizer(f"generators {i} and {j} do not commute")
            rows.append(v)
            pairs.append((i, j))
    m = GF2Matrix(tuple(rows), s.n)
    return KSubspace(m, gf2_rank(m), tuple(pairs))


def _require(s: StabilizerSet) -> None:
    if not validate(s).valid:
        raise InvalidStabilizer("generators do not stabilize a nontrivial subspace")


def is_gme_rank(s: StabilizerSet) -> bool:
    _require(s)
    return pair_vectors(s).dim == s.n - 1


def even_bipartitions(s: StabilizerSet, limit: int = DEFAULT_LIMITS.oracle_limit) -> list[int]:
    """All canonical nontrivial bipartitions that are even on every v_{i,j}."""
    n = s.n
    if n > limit:
        raise ResourceLimit(f"N={n} exceeds the oracle limit {limit}")
    rows = pair_vectors(s).vectors.rows
    # canonical phi: lowest bit clear, so phi = 2*t for t in 1 .. 2^(n-1)-1
    count = (1 << (n - 1)) - 1
    bad = []
    chunk = 1 << 20
    for start in range(1, count + 1, chunk):
        phis = np.arange(start, min(start + chunk, count + 1), dtype=np.uint64) << np.uint64(1)
        odd = np.zeros(phis.shape, dtype=bool)
        for v in rows:
            odd |= (np.bitwise_count(phis & np.uint64(v)) & 1).astype(bool)
        bad.extend(int(p) for p in phis[~odd])
    return bad


def is_gme_oracle(s: StabilizerSet, limit: int = DEFAULT_LIMITS.oracle_limit) -> bool:
    _require(s)
    return not even_bipartitions(s, limit)


def graph_state_generators(adjacency) -> StabilizerSet:
    a = np.asarray(adjacency, dtype=int)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("adjacency must be square")
    if not np.array_equal(a, a.T):
        raise ValueError("adjacency must be symmetric")
    if np.any(np.diag(a)):
        raise ValueError("adjacency must have zero diagonal")
    if np.any((a != 0) & (a != 1)):
        raise ValueError("adjacency must be a 0/1 matrix")
    n = a.shape[0]
    gens = []
    for i in range(n):
        z = sum(1 << j for j in range(n) if a[i, j])
        gens.append(PauliOp(n, 1 << i, z))
    return StabilizerSet(n, tuple(gens))


def graph_components(adjacency) -> int:
    a = np.asarray(adjacency, dtype=int)
    n = a.shape[0]
    seen = [False] * n
    comps = 0
    for r in range(n):
        if seen[r]:
            continue
        comps += 1
        stack = [r]
        seen[r] = True
        while stack:
            u = stack.pop()
            for w in np.flatnonzero(a[u]):
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
    return comps


def explain(s: StabilizerSet, run_oracle: bool = True,
            limit: int = DEFAULT_LIMITS.oracle_limit) -> dict:
    """Summary used by the ``check-gme`` command."""
    report = validate(s)
    out: dict = {"N": s.n, "k": s.k, "validation": report.to_json()}
    if not report.valid:
        return out
    ks = pair_vectors(s)
    out["dim_K"] = ks.dim
    out["rank_criterion"] = ks.dim == s.n - 1
    if run_oracle and s.n <= limit:
        out["oracle"] = is_gme_oracle(s, limit)
    return out


def bipartition_from_parties(parties: Sequence[int], n: int) -> int:
    phi = 0
    for p in parties:
        phi |= 1 << p
    if not is_nontrivial(phi, n):
        raise ValueError("bipartition must be nontrivial")
    return phi
