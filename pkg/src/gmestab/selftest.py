"""Numerical ingredients of self-testing from maximal violation.

* :func:`canonicalize_pair` turns any pair of anticommuting Hermitian
  involutions into ``X (x) 1`` and ``Z (x) 1`` by a unitary change of basis.
* :func:`verify_stabilization` checks ``G~_i |psi> = |psi>`` for the
  observable-level generators.

Only the canonical realization and the algebraic relations are certified
here; statements about every purification of an unknown state are outside
what a finite computation can check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import unitary_group

from .bell import ObservableSet, tilde_operator
from .config import DEFAULT_TOL
from .stabilizer import StabilizerSet

SCOPE_NOTE = ("certifies the canonical realization and the algebraic relations only; "
              "purification-level statements are not checked")

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class PairError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class InvolutionPair:
    Xt: np.ndarray
    Zt: np.ndarray
    tol: float = DEFAULT_TOL.involution

    def __post_init__(self):
        xt = np.asarray(self.Xt, dtype=complex)
        zt = np.asarray(self.Zt, dtype=complex)
        object.__setattr__(self, "Xt", xt)
        object.__setattr__(self, "Zt", zt)
        if xt.ndim != 2 or xt.shape != zt.shape or xt.shape[0] != xt.shape[1]:
            raise PairError("Xt and Zt must be square matrices of equal size")
        for name, err in self.defects().items():
            if err > self.tol:
                raise PairError(f"{name} violated by {err:.2e}")

    @property
    def d(self) -> int:
        return self.Xt.shape[0]

    def defects(self) -> dict[str, float]:
        xt, zt = self.Xt, self.Zt
        eye = np.eye(xt.shape[0])
        return {
            "Xt hermitian": _norm(xt - xt.conj().T),
            "Zt hermitian": _norm(zt - zt.conj().T),
            "Xt^2 = 1": _norm(xt @ xt - eye),
            "Zt^2 = 1": _norm(zt @ zt - eye),
            "{Xt, Zt} = 0": _norm(xt @ zt + zt @ xt),
        }


def _norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, 2)) if a.size else 0.0


def _fix_phase(v: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    idx = int(np.flatnonzero(np.abs(v) > tol)[0])
    return v * (abs(v[idx]) / v[idx])


def canonicalize_pair(pair: InvolutionPair) -> np.ndarray:
    """Unitary U with ``U Xt U^dag = X (x) 1`` and ``U Zt U^dag = Z (x) 1``.

    The +1 eigenvectors u_j of Xt are sent to ``|+> (x) e_j`` and their images
    ``Zt u_j`` (which span the -1 eigenspace) to ``|-> (x) e_j``.
    """
    d = pair.d
    if d % 2:
        raise PairError(f"odd dimension {d}: anticommuting involutions need even d")
    w, v = np.linalg.eigh(0.5 * (pair.Xt + pair.Xt.conj().T))
    plus = v[:, w > 0]
    if plus.shape[1] != d // 2 or np.any(np.abs(np.abs(w) - 1) > 1e-6):
        raise PairError(f"Xt has {plus.shape[1]} positive eigenvalues out of {d}")
    plus = np.stack([_fix_phase(plus[:, j]) for j in range(d // 2)], axis=1)
    # deterministic order: by the position of the first significant component
    order = np.argsort([int(np.flatnonzero(np.abs(plus[:, j]) > 1e-8)[0]) for j in range(d // 2)],
                       kind="stable")
    plus = plus[:, order]
    minus = pair.Zt @ plus
    w_basis = np.concatenate([plus, minus], axis=1)  # columns |+,j>, |-,j>
    v_map = w_basis @ np.kron(_H, np.eye(d // 2))
    if _norm(v_map.conj().T @ v_map - np.eye(d)) > 1e-8:
        raise PairError("paired eigenbases are not orthonormal; anticommutation broken")
    return v_map.conj().T


def canonical_error(pair: InvolutionPair, u: np.ndarray) -> float:
    half = np.eye(pair.d // 2)
    ex = _norm(u @ pair.Xt @ u.conj().T - np.kron(_X, half))
    ez = _norm(u @ pair.Zt @ u.conj().T - np.kron(_Z, half))
    return max(ex, ez)


def random_conjugated_pair(d: int, rng) -> tuple[InvolutionPair, np.ndarray]:
    """``(V (X(x)1) V^dag, V (Z(x)1) V^dag)`` for a Haar-random V; returns the pair and V."""
    rng = np.random.default_rng(rng)
    v = unitary_group.rvs(d, random_state=rng)
    half = np.eye(d // 2)
    xt = v @ np.kron(_X, half) @ v.conj().T
    zt = v @ np.kron(_Z, half) @ v.conj().T
    sym = lambda a: 0.5 * (a + a.conj().T)
    return InvolutionPair(sym(xt), sym(zt)), v


def propagated_pairs(obs: ObservableSet) -> list[InvolutionPair]:
    """Per-site ``(X~, Z~)``: rescaled sum/difference on party 0, ``(A_0, A_1)`` elsewhere."""
    r = 1 / np.sqrt(2)
    out = []
    for p, (a0, a1) in enumerate(obs.pairs):
        if p == 0:
            out.append(InvolutionPair(r * (a0 + a1), r * (a0 - a1)))
        else:
            out.append(InvolutionPair(a0, a1))
    return out


@dataclass(frozen=True)
class StabilizationReport:
    residuals: tuple[float, ...]
    passed: bool
    fidelity: float
    tol: float
    note: str = field(default=SCOPE_NOTE)

    @property
    def max_residual(self) -> float:
        return max(self.residuals)

    def to_json(self) -> dict:
        return {"residuals": list(self.residuals), "max_residual": self.max_residual,
                "passed": self.passed, "fidelity": self.fidelity, "note": self.note}


def verify_stabilization(obs: ObservableSet, state: np.ndarray, s: StabilizerSet,
                         tol: float = DEFAULT_TOL.canonical) -> StabilizationReport:
    """Residuals ``||G~_i psi - psi||`` and the weight of psi on the joint +1 space."""
    psi = np.asarray(state, dtype=complex).reshape(-1)
    if obs.n_parties != s.n:
        raise ValueError("observables and generators disagree on the number of parties")
    if psi.shape[0] != obs.total_dim:
        raise ValueError(f"state has dimension {psi.shape[0]}, expected {obs.total_dim}")
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise ValueError("zero state")
    psi = psi / nrm
    residuals, proj = [], psi
    for g in s.generators:
        gt = tilde_operator(g, obs)
        residuals.append(float(np.linalg.norm(gt @ psi - psi)))
        proj = 0.5 * (proj + gt @ proj)
    fid = float(np.vdot(proj, proj).real)
    res = tuple(residuals)
    return StabilizationReport(res, max(res) <= tol, fid, tol)
