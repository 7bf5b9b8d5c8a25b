"""Faces of the quantum set exposed by the maximal-family inequality.

Adding the ``N - k_min`` operators ``+-H_{i,j}`` to the maximal family fixes
a single state for each sign pattern.  All of these states reach the quantum
bound, and their behaviours restricted to the correlators of products of
``H~`` (plus one ``G~``) are affinely independent, so the face they span has
dimension ``2^(N - k_min) - 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bell import (
    Correlator,
    ObservableSet,
    bell_operator,
    canonical_observables,
    correlator_operator,
    synth_max_inequality,
)
from .config import DEFAULT_LIMITS, DEFAULT_TOL
from .constructions import h_operator_table, k_min, max_generators
from .pauli import PauliOp, product
from .stabilizer import ResourceLimit, StabilizerSet, codeword_basis


class FaceMembershipError(AssertionError):
    pass


def signed_stabilizer(n: int, signs: Sequence[int]) -> StabilizerSet:
    """Maximal family plus ``(-1)^{s_j} H_j`` for a bit vector s of length N - k_min."""
    table = h_operator_table(n) if n - k_min(n) > 0 else ()
    if len(signs) != len(table):
        raise ValueError(f"need {len(table)} signs for N={n}, got {len(signs)}")
    if any(b not in (0, 1) for b in signs):
        raise ValueError("signs must be bits")
    hs = [(-h.op if b else h.op) for h, b in zip(table, signs)]
    return max_generators(n).extend(hs)


def sign_patterns(n: int) -> list[tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=n - k_min(n)))


def signed_state(n: int, signs: Sequence[int],
                 dense_limit: int = DEFAULT_LIMITS.dense_limit) -> np.ndarray:
    basis = codeword_basis(signed_stabilizer(n, signs), dense_limit)
    if basis.shape[1] != 1:
        raise FaceMembershipError(f"signed stabilizer has dimension {basis.shape[1]}, expected 1")
    return basis[:, 0]


@dataclass(frozen=True, eq=False)
class Behaviour:
    labels: tuple[Correlator, ...]
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (len(self.labels),):
            raise ValueError("one value per label required")
        if np.any(np.abs(vals) > 1 + 1e-9):
            raise ValueError("correlators must lie in [-1, 1]")
        object.__setattr__(self, "values", np.clip(vals, -1.0, 1.0))

    def __getitem__(self, label: Correlator) -> float:
        return float(self.values[self.labels.index(label)])


def _tilde_correlators(p: PauliOp) -> list[tuple[float, Correlator]]:
    """``G~`` written as a signed sum of plain correlators."""
    parts = [(float(p.sign), ())]
    r = 1 / np.sqrt(2)
    for q in range(p.n):
        c = p.letter(q)
        if c == "1":
            continue
        if c == "Y":
            raise ValueError(f"{p} contains Y")
        if q == 0:
            s1 = 1.0 if c == "X" else -1.0
            parts = [(w * r, key + ((0, 0),)) for w, key in parts] + \
                    [(w * r * s1, key + ((0, 1),)) for w, key in parts]
        else:
            parts = [(w, key + ((q, 0 if c == "X" else 1),)) for w, key in parts]
    return parts


def face_labels(n: int, g_index: int | None = None) -> tuple[Correlator, ...]:
    """Correlators of every nonempty product of ``H~`` plus those of one ``G~``.

    The default ``G~`` is the last generator, which avoids party 0 whenever
    k_min >= 3 and is then a single correlator.
    """
    gens = max_generators(n).generators
    g = gens[-1 if g_index is None else g_index]
    table = h_operator_table(n) if n - k_min(n) > 0 else ()
    labels: list[Correlator] = []
    for r in range(1, len(table) + 1):
        for subset in itertools.combinations(table, r):
            word = product([h.op for h in subset], n)
            if word.letter(0) != "1" or not word.is_hermitian() or word.sign != 1:
                raise AssertionError(f"H product {word} is not a plain correlator")
            (_, key), = _tilde_correlators(word)
            labels.append(key)
    for _, key in _tilde_correlators(g):
        labels.append(key)
    if len(set(labels)) != len(labels):
        raise AssertionError("duplicate face labels")
    return tuple(labels)


def behaviour(state: np.ndarray, obs: ObservableSet, labels: Sequence[Correlator],
              dense_limit: int = DEFAULT_LIMITS.dense_limit) -> Behaviour:
    psi = np.asarray(state, dtype=complex).reshape(-1)
    if psi.shape[0] != obs.total_dim:
        raise ValueError(f"state has dimension {psi.shape[0]}, expected {obs.total_dim}")
    if obs.total_dim > 1 << dense_limit:
        raise ResourceLimit(f"dimension {obs.total_dim} exceeds 2^{dense_limit}")
    psi = psi / np.linalg.norm(psi)
    vals = [np.vdot(psi, correlator_operator(key, obs) @ psi).real for key in labels]
    return Behaviour(tuple(labels), np.array(vals))


def affine_rank(points: np.ndarray, tol: float = DEFAULT_TOL.canonical) -> int:
    """Rank of the differences to the first point, relative tolerance on singular values."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2:
        return 0
    diffs = pts[1:] - pts[0]
    sv = np.linalg.svd(diffs, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * max(1.0, sv[0])))


@dataclass(frozen=True)
class FaceReport:
    n: int
    k: int
    dimension: int
    expected: int
    quantum_bound: float
    values: tuple[float, ...]
    residuals: tuple[float, ...]
    max_overlap: float
    signs_recovered: bool

    @property
    def passed(self) -> bool:
        return self.dimension == self.expected and self.signs_recovered

    def to_json(self) -> dict:
        return {"N": self.n, "k_min": self.k, "face_dimension": self.dimension,
                "expected": self.expected, "quantum_bound": self.quantum_bound,
                "values": list(self.values), "residuals": list(self.residuals),
                "max_overlap": self.max_overlap, "signs_recovered": self.signs_recovered,
                "passed": self.passed}


def analyze_face(n: int, g_index: int | None = None,
                 dense_limit: int = DEFAULT_LIMITS.dense_limit,
                 tol: float = 1e-9) -> FaceReport:
    k = k_min(n)
    expr = synth_max_inequality(n)
    beta = float(expr.quantum_bound)
    obs = canonical_observables(n)
    bop = bell_operator(expr, obs, dense_limit)
    labels = face_labels(n, g_index)
    n_h = n - k
    patterns = sign_patterns(n)

    states, rows, values, residuals = [], [], [], []
    recovered = True
    for signs in patterns:
        psi = signed_state(n, signs, dense_limit)
        val = float(np.vdot(psi, bop @ psi).real)
        if abs(val - beta) > tol:
            raise FaceMembershipError(f"N={n}, signs {signs}: value {val} != {beta}")
        b = behaviour(psi, obs, labels, dense_limit)
        single = [b.values[labels.index(_single_h_label(n, j))] for j in range(n_h)]
        recovered &= bool(np.allclose(single, [(-1) ** s for s in signs], atol=1e-8))
        states.append(psi)
        rows.append(b.values)
        values.append(val)
        residuals.append(abs(val - beta))

    mat = np.array(states)
    gram = np.abs(mat.conj() @ mat.T) - np.eye(len(states))
    return FaceReport(n, k, affine_rank(np.array(rows)), 2 ** n_h - 1, beta,
                      tuple(values), tuple(residuals), float(np.max(np.abs(gram))), recovered)


def _single_h_label(n: int, j: int) -> Correlator:
    (_, key), = _tilde_correlators(h_operator_table(n)[j].op)
    return key


def face_dimension(n: int, dense_limit: int = DEFAULT_LIMITS.dense_limit) -> int:
    return analyze_face(n, dense_limit=dense_limit).dimension
