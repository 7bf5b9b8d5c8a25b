"""Genuinely multipartite entangled stabilizer subspaces.

Pauli algebra on bit-packed words, stabilizer validation, the GF(2) rank test
for genuine multipartite entanglement, explicit generator families, Bell
inequalities synthesized from stabilizers with exact classical bounds and
sum-of-squares certificates, self-testing checks and face dimensions.
"""

from .bell import (
    BellExpression,
    ObservableSet,
    bell_from_stabilizers,
    bell_operator,
    canonical_observables,
    chsh,
    classical_bound,
    quantum_value_on_subspace,
    random_observables,
    synth_cyclic_inequality,
    synth_max_inequality,
    verify_sos,
)
from .config import DEFAULT_LIMITS, DEFAULT_TOL, Limits, Tolerances
from .constructions import (
    construction2_generators,
    five_qubit_code,
    ghz_generators,
    h_operators,
    k_min,
    max_generators,
    shor_code,
)
from .exact import QSqrt2
from .faces import analyze_face, face_dimension, signed_stabilizer
from .gme import graph_state_generators, is_gme_oracle, is_gme_rank, pair_vectors
from .pauli import PauliOp, pauli_from_indexed, pauli_from_string
from .selftest import InvolutionPair, canonicalize_pair, verify_stabilization
from .stabilizer import InvalidStabilizer, ResourceLimit, StabilizerSet, validate

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
