"""Generator sets, their validation, and the stabilized subspace at small N."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT_LIMITS
from .gf2 import gf2_rank, left_kernel, span
from .pauli import (
    PauliOp,
    apply_pauli,
    commutes,
    load_paulis,
    paulis_to_json,
    pauli_from_string,
    product,
    symplectic_matrix,
)


class InvalidStabilizer(ValueError):
    pass


class ResourceLimit(RuntimeError):
    """Raised when a dense or exhaustive step would exceed its configured limit."""


@dataclass(frozen=True)
class StabilizerSet:
    n: int
    generators: tuple[PauliOp, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise InvalidStabilizer("empty generator list")
        for g in gens:
            if g.n != self.n:
                raise InvalidStabilizer(f"generator {g} has width {g.n}, expected {self.n}")
            if not g.is_hermitian():
                raise InvalidStabilizer(f"generator {g} is not a Hermitian +-1 word")

    @classmethod
    def from_ops(cls, ops: Sequence[PauliOp]) -> "StabilizerSet":
        if not ops:
            raise InvalidStabilizer("empty generator list")
        return cls(ops[0].n, tuple(ops))

    @classmethod
    def from_strings(cls, words: Iterable[str]) -> "StabilizerSet":
        return cls.from_ops([pauli_from_string(w) for w in words])

    @classmethod
    def from_text(cls, text: str) -> "StabilizerSet":
        return cls.from_ops(load_paulis(text))

    @classmethod
    def from_file(cls, path) -> "StabilizerSet":
        with open(path) as fh:
            return cls.from_text(fh.read())

    @property
    def k(self) -> int:
        return len(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def words(self) -> list[str]:
        return [str(g) for g in self.generators]

    def to_json(self) -> dict:
        return paulis_to_json(self.generators)

    def extend(self, ops: Iterable[PauliOp]) -> "StabilizerSet":
        return StabilizerSet(self.n, self.generators + tuple(ops))

    def uses_only_xz(self) -> bool:
        return all(g.x & g.z == 0 for g in self.generators)


@dataclass(frozen=True)
class ValidationReport:
    abelian: bool
    independent: bool
    minus_identity_free: bool
    subspace_dim: int
    rank: int

    @property
    def valid(self) -> bool:
        return self.subspace_dim > 0

    def to_json(self) -> dict:
        return {**asdict(self), "valid": self.valid}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def is_abelian(s: StabilizerSet) -> bool:
    g = s.generators
    return all(commutes(g[i], g[j]) for i in range(len(g)) for j in range(i + 1, len(g)))


def validate(s: StabilizerSet, kernel_cap: int = DEFAULT_LIMITS.kernel_cap) -> ValidationReport:
    """Check that the generators define a nontrivial stabilizer.

    -1 membership is decided by multiplying out every row combination that
    cancels in the symplectic matrix (the GF(2) left kernel).  A non-abelian
    set always contains -1 (G_i G_j G_i G_j = -1 for an anticommuting pair of
    involutions), so no enumeration is done in that case.
    """
    rows = symplectic_matrix(s.generators)
    rank = gf2_rank(rows)
    independent = rank == s.k
    abelian = is_abelian(s)
    if not abelian:
        return ValidationReport(False, independent, False, 0, rank)

    relations = left_kernel(rows)
    if (1 << len(relations)) > kernel_cap:
        raise ResourceLimit(
            f"{1 << len(relations)} dependent subset products exceed the cap {kernel_cap}"
        )
    minus_free = True
    for combo in span(relations.rows):
        if combo == 0:
            continue
        picked = [g for i, g in enumerate(s.generators) if (combo >> i) & 1]
        p = product(picked)
        assert p.is_identity()
        if p.phase == 2:
            minus_free = False
            break
    if independent:
        assert minus_free
    dim = 1 << (s.n - rank) if minus_free else 0
    return ValidationReport(abelian, independent, minus_free, dim, rank)


def _require_valid(s: StabilizerSet, dense_limit: int) -> ValidationReport:
    if s.n > dense_limit:
        raise ResourceLimit(f"N={s.n} exceeds the dense limit {dense_limit}")
    report = validate(s)
    if not report.valid:
        raise InvalidStabilizer(f"generators do not stabilize a nontrivial subspace: {report}")
    return report


def independent_subset(s: StabilizerSet) -> list[PauliOp]:
    """Greedy maximal GF(2)-independent prefix-ordered subset of the generators."""
    kept, rows = [], []
    for g in s.generators:
        if gf2_rank(rows + [g.symplectic_row()]) > len(rows):
            rows.append(g.symplectic_row())
            kept.append(g)
    return kept


def apply_projector(s: StabilizerSet, vecs: np.ndarray) -> np.ndarray:
    """Apply ``prod_i (1 + G_i)/2`` over an independent generator subset."""
    out = np.asarray(vecs, dtype=complex)
    for g in independent_subset(s):
        out = 0.5 * (out + apply_pauli(g, out))
    return out


def projector(s: StabilizerSet, dense_limit: int = DEFAULT_LIMITS.dense_limit) -> np.ndarray:
    _require_valid(s, dense_limit)
    return apply_projector(s, np.eye(1 << s.n, dtype=complex))


def codeword_basis(s: StabilizerSet, dense_limit: int = DEFAULT_LIMITS.dense_limit) -> np.ndarray:
    """Orthonormal basis of the stabilized subspace, one codeword per column.

    Eigenvectors of the projector with eigenvalue above 1/2; each column is
    phase-fixed so that its largest-magnitude entry (first one on ties) is
    real positive.
    """
    report = _require_valid(s, dense_limit)
    p = projector(s, dense_limit)
    w, v = np.linalg.eigh(p)
    basis = v[:, w > 0.5]
    if basis.shape[1] != report.subspace_dim:
        raise ArithmeticError(
            f"projector rank {basis.shape[1]} != expected dimension {report.subspace_dim}"
        )
    for j in range(basis.shape[1]):
        col = basis[:, j]
        k = int(np.argmax(np.abs(col) > np.abs(col).max() - 1e-9))
        basis[:, j] = col * (abs(col[k]) / col[k])
    return basis
