from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    """Resource guards shared by the dense and exhaustive code paths."""

    dense_limit: int = 12  # max qubits for 2^N x 2^N matrices
    brute_limit: int = 14  # max parties for the 4^N local deterministic search
    oracle_limit: int = 24  # max qubits for the 2^(N-1) bipartition loop
    kernel_cap: int = 1 << 20  # max subset products when testing for -1

    def __post_init__(self):
        for name in ("dense_limit", "brute_limit", "oracle_limit", "kernel_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def with_(self, **kw) -> "Limits":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class Tolerances:
    matrix: float = 1e-9  # dense identities (projectors, eigenvalues, SOS residuals)
    involution: float = 1e-10  # input checks on observables
    canonical: float = 1e-8  # outputs of the self-test canonicalization
    rank: float = 1e-8  # relative singular-value cutoff for affine rank


DEFAULT_TOL = Tolerances()
