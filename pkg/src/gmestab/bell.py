"""Bell expressions built from stabilizer generators.

Every X/Z in a generator is replaced by a local observable: on party 0,
``X -> A_0 + A_1`` and ``Z -> A_0 - A_1``; on every other party ``X -> A_0``
and ``Z -> A_1``.  Summing the resulting correlators with positive weights
gives a CHSH-like expression whose classical bound is found by exhaustive
search over local deterministic strategies and whose quantum bound is
certified by a sum-of-squares identity.

Parties are 0-based.  A correlator is a sorted tuple of ``(party, setting)``
pairs; coefficients are exact elements of Q(sqrt 2).
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from typing import Mapping, NamedTuple, Sequence

import numpy as np
from scipy.stats import unitary_group

from .config import DEFAULT_LIMITS, DEFAULT_TOL
from .constructions import construction2_generators, k_min, max_generators
from .exact import ONE, ROOT2, ZERO, QSqrt2
from .pauli import PauliOp
from .stabilizer import ResourceLimit, StabilizerSet, codeword_basis

Correlator = tuple[tuple[int, int], ...]

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True, eq=False)
class BellExpression:
    n_parties: int
    terms: Mapping[Correlator, QSqrt2]
    classical_bound: QSqrt2 | None = None
    quantum_bound: QSqrt2 | None = None
    name: str = ""

    def __post_init__(self):
        clean = {}
        for key, c in self.terms.items():
            key = tuple(sorted((int(p), int(x)) for p, x in key))
            if not key:
                raise ValueError("a term must touch at least one party")
            parties = [p for p, _ in key]
            if len(set(parties)) != len(parties):
                raise ValueError(f"party repeated in {key}")
            if any(not 0 <= p < self.n_parties or x not in (0, 1) for p, x in key):
                raise ValueError(f"bad correlator {key}")
            c = QSqrt2.of(c)
            if c:
                clean[key] = clean.get(key, ZERO) + c
        clean = {k: v for k, v in clean.items() if v}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        if self.classical_bound is not None and self.quantum_bound is not None:
            if self.classical_bound > self.quantum_bound:
                raise ValueError("classical bound exceeds quantum bound")

    def __eq__(self, other):
        if not isinstance(other, BellExpression):
            return NotImplemented
        return self.n_parties == other.n_parties and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def with_bounds(self, classical=None, quantum=None) -> "BellExpression":
        return BellExpression(
            self.n_parties, self.terms,
            None if classical is None else QSqrt2.of(classical),
            None if quantum is None else QSqrt2.of(quantum),
            self.name,
        )

    def evaluate(self, values: Mapping[tuple[int, int], int | float]):
        """Value on a product behaviour given single-observable values."""
        total = 0
        for key, c in self.terms.items():
            total += float(c) * np.prod([values[ps] for ps in key])
        return total

    def evaluate_exact(self, values: Mapping[tuple[int, int], int]) -> QSqrt2:
        total = ZERO
        for key, c in self.terms.items():
            sign = 1
            for ps in key:
                sign *= values[ps]
            total = total + c * sign
        return total

    def to_json(self) -> dict:
        enc = lambda v: None if v is None else v.to_json()
        return {
            "name": self.name,
            "n_parties": self.n_parties,
            "terms": [{"parties": [list(ps) for ps in key], "coeff": c.to_json()}
                      for key, c in self.terms.items()],
            "classical_bound": enc(self.classical_bound),
            "quantum_bound": enc(self.quantum_bound),
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, data) -> "BellExpression":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for t in data["terms"]:
            key = tuple((int(p), int(x)) for p, x in t["parties"])
            terms[key] = terms.get(key, ZERO) + QSqrt2.from_json(t["coeff"])
        dec = lambda v: None if v is None else QSqrt2.from_json(v)
        return cls(int(data["n_parties"]), terms, dec(data.get("classical_bound")),
                   dec(data.get("quantum_bound")), data.get("name", ""))

    def relabel(self, perm: Sequence[int]) -> "BellExpression":
        """Move party p to perm[p]."""
        if sorted(perm) != list(range(self.n_parties)):
            raise ValueError("not a permutation")
        terms = {tuple((perm[p], x) for p, x in key): c for key, c in self.terms.items()}
        return BellExpression(self.n_parties, terms, self.classical_bound,
                              self.quantum_bound, self.name)

    def flip(self, party: int, setting: int) -> "BellExpression":
        """Negate the coefficients of every term containing A_setting^(party)."""
        terms = {key: (-c if (party, setting) in key else c) for key, c in self.terms.items()}
        return BellExpression(self.n_parties, terms, self.classical_bound,
                              self.quantum_bound, self.name)

    def __str__(self):
        parts = []
        for key, c in self.terms.items():
            corr = " ".join(f"A{x}^({p + 1})" for p, x in key)
            parts.append(f"({c})<{corr}>")
        return " + ".join(parts)


def _weights(s: StabilizerSet, weights) -> list[QSqrt2]:
    if weights is None:
        return [ONE] * s.k
    ws = [QSqrt2.of(w) for w in weights]
    if len(ws) != s.k:
        raise ValueError(f"{len(ws)} weights for {s.k} generators")
    if any(w <= 0 for w in ws):
        raise ValueError("weights must be positive")
    return ws


def _local_options(g: PauliOp, party: int) -> list[tuple[int | None, int]]:
    c = g.letter(party)
    if c == "Y":
        raise ValueError(f"generator {g} contains Y; no observable assignment for it")
    if c == "1":
        return [(None, 1)]
    if party == 0:
        return [(0, 1), (1, 1)] if c == "X" else [(0, 1), (1, -1)]
    return [(0 if c == "X" else 1, 1)]


def bell_from_stabilizers(s: StabilizerSet, weights=None, name: str = "") -> BellExpression:
    ws = _weights(s, weights)
    terms: dict[Correlator, QSqrt2] = {}
    for g, w in zip(s.generators, ws):
        if g.is_identity():
            raise ValueError("identity generator has no Bell term")
        options = [_local_options(g, p) for p in range(s.n)]
        for choice in itertools.product(*options):
            key = tuple((p, x) for p, (x, _) in enumerate(choice) if x is not None)
            sign = g.sign
            for _, c in choice:
                sign *= c
            terms[key] = terms.get(key, ZERO) + w * sign
    return BellExpression(s.n, terms, name=name)


def chsh() -> BellExpression:
    s = StabilizerSet.from_strings(["XX", "ZZ"])
    return bell_from_stabilizers(s, name="CHSH").with_bounds(2, 2 * ROOT2)


def max_quantum_value(n: int) -> QSqrt2:
    return 2 * (ROOT2 - 1) + k_min(n)


def synth_max_inequality(n: int) -> BellExpression:
    """Inequality maximally violated by the maximal-dimension GME subspace.

    Bounds are the closed forms k_min(N) and 2(sqrt2 - 1) + k_min(N); the
    classical one is re-checked by :func:`classical_bound` in the tests and in
    ``certify``.
    """
    expr = bell_from_stabilizers(max_generators(n), name=f"I_max[{n}]")
    return expr.with_bounds(k_min(n), max_quantum_value(n))


def cyclic_weights(n: int) -> list[int]:
    w = [1] * (n // 2 + 1)
    w[1] = 2
    return w


def synth_cyclic_inequality(n: int) -> BellExpression:
    """Inequality for the cyclic even-N family, second generator weighted by 2."""
    if n % 2 or n < 6:
        raise ValueError("needs even N >= 6")
    s = construction2_generators(n, cyclic=True)
    expr = bell_from_stabilizers(s, cyclic_weights(n), name=f"I_cyc[{n}]")
    half = QSqrt2.of(n // 2)
    return expr.with_bounds(half + 2, half + 2 * (2 * ROOT2 - 1))


# classical bound -----------------------------------------------------------------

class ClassicalBound(NamedTuple):
    value: float
    exact: QSqrt2
    witness: dict[tuple[int, int], int]


def classical_bound(expr: BellExpression, brute_limit: int = DEFAULT_LIMITS.brute_limit,
                    low_bits: int = 20, batch: int = 8, workers: int = 1) -> ClassicalBound:
    """Exact maximum over local deterministic strategies.

    Each observable that appears in the expression is one +-1 variable; an
    assignment is an integer whose set bits mark the -1 values, so every term
    evaluates to ``c_t * (-1)**popcount(x & mask_t)``.  The low bits are
    tabulated once per term and the high bits are swept in batches, turning
    each batch into one dense matrix product.  The exact value is recomputed in
    Q(sqrt 2) at the maximizing assignment.
    """
    if expr.n_parties > brute_limit:
        raise ResourceLimit(f"{expr.n_parties} parties exceed the brute-force limit {brute_limit}")
    keys = list(expr.terms)
    variables = sorted({ps for key in keys for ps in key})
    index = {v: i for i, v in enumerate(variables)}
    m = len(variables)
    masks = np.array([sum(1 << index[ps] for ps in key) for key in keys], dtype=np.uint64)
    coeffs = np.array([float(expr.terms[k]) for k in keys])

    lo = min(m, low_bits)
    hi = m - lo
    lo_mask = np.uint64((1 << lo) - 1)
    xs = np.arange(1 << lo, dtype=np.uint64)
    table = 1.0 - 2.0 * (np.bitwise_count(xs[None, :] & (masks[:, None] & lo_mask)) & 1)
    hi_masks = masks >> np.uint64(lo)

    def sweep(start: int) -> tuple[float, int]:
        hs = np.arange(start, min(start + batch, 1 << hi), dtype=np.uint64)
        hsign = 1.0 - 2.0 * (np.bitwise_count(hs[:, None] & hi_masks[None, :]) & 1)
        vals = (hsign * coeffs) @ table
        r, c = divmod(int(np.argmax(vals)), vals.shape[1])
        return float(vals[r, c]), (int(hs[r]) << lo) | c

    starts = range(0, 1 << hi, batch)
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(sweep, starts))
    else:
        results = [sweep(st) for st in starts]
    best_x = max(results, key=lambda r: r[0])[1]

    witness = {(p, x): 1 for p in range(expr.n_parties) for x in (0, 1)}
    for v, i in index.items():
        witness[v] = -1 if (best_x >> i) & 1 else 1
    exact = expr.evaluate_exact(witness)
    return ClassicalBound(float(exact), exact, witness)


# observables and operators --------------------------------------------------------

def _is_involution(a: np.ndarray, tol: float) -> bool:
    d = a.shape[0]
    return (np.allclose(a, a.conj().T, atol=tol)
            and np.allclose(a @ a, np.eye(d), atol=tol))


@dataclass(frozen=True, eq=False)
class ObservableSet:
    """Two dichotomic observables per party."""

    pairs: tuple[tuple[np.ndarray, np.ndarray], ...]
    tol: float = field(default=DEFAULT_TOL.involution)

    def __post_init__(self):
        pairs = tuple((np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
                      for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for i, (a0, a1) in enumerate(pairs):
            if a0.shape != a1.shape or a0.ndim != 2 or a0.shape[0] != a0.shape[1]:
                raise ValueError(f"party {i}: observables must be equal square matrices")
            for a in (a0, a1):
                if not _is_involution(a, self.tol):
                    raise ValueError(f"party {i}: observable is not a Hermitian involution")

    @property
    def n_parties(self) -> int:
        return len(self.pairs)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(a.shape[0] for a, _ in self.pairs)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def __getitem__(self, ps: tuple[int, int]) -> np.ndarray:
        p, x = ps
        return self.pairs[p][x]


def canonical_observables(n: int) -> ObservableSet:
    r = 1 / np.sqrt(2)
    first = (r * (_X + _Z), r * (_X - _Z))
    return ObservableSet((first,) + tuple((_X, _Z) for _ in range(n - 1)))


def random_involution(d: int, rng: np.random.Generator, n_minus: int | None = None) -> np.ndarray:
    if n_minus is None:
        n_minus = int(rng.integers(0, d + 1))
    u = unitary_group.rvs(d, random_state=rng) if d > 1 else np.ones((1, 1))
    signature = np.array([-1.0] * n_minus + [1.0] * (d - n_minus))
    a = (u * signature) @ u.conj().T
    return 0.5 * (a + a.conj().T)


def random_observables(n: int, dims: int | Sequence[int], rng) -> ObservableSet:
    rng = np.random.default_rng(rng)
    if isinstance(dims, int):
        dims = [dims] * n
    return ObservableSet(tuple((random_involution(d, rng), random_involution(d, rng))
                               for d in dims))


def _check_dense(obs: ObservableSet, dense_limit: int) -> None:
    if obs.total_dim > 1 << dense_limit:
        raise ResourceLimit(f"total dimension {obs.total_dim} exceeds 2^{dense_limit}")


def local_product(obs: ObservableSet, factors: Mapping[int, np.ndarray]) -> np.ndarray:
    mats = [factors.get(p, np.eye(d, dtype=complex)) for p, d in enumerate(obs.dims)]
    return reduce(np.kron, mats)


def correlator_operator(key: Correlator, obs: ObservableSet) -> np.ndarray:
    return local_product(obs, {p: obs[(p, x)] for p, x in key})


def bell_operator(expr: BellExpression, obs: ObservableSet,
                  dense_limit: int = DEFAULT_LIMITS.dense_limit) -> np.ndarray:
    if obs.n_parties != expr.n_parties:
        raise ValueError("observable set and expression disagree on the number of parties")
    _check_dense(obs, dense_limit)
    dim = obs.total_dim
    b = np.zeros((dim, dim), dtype=complex)
    for key, c in expr.terms.items():
        b += float(c) * correlator_operator(key, obs)
    return b


def tilde_factors(g: PauliOp, obs: ObservableSet) -> dict[int, np.ndarray]:
    """Per-party factors of G~: X, Z replaced by observables (party 0 rescaled by 1/sqrt2)."""
    out = {}
    r = 1 / np.sqrt(2)
    for p in range(g.n):
        c = g.letter(p)
        if c == "1":
            continue
        if c == "Y":
            raise ValueError(f"{g} contains Y")
        a0, a1 = obs.pairs[p]
        if p == 0:
            out[p] = r * (a0 + a1) if c == "X" else r * (a0 - a1)
        else:
            out[p] = a0 if c == "X" else a1
    return out


def tilde_operator(g: PauliOp, obs: ObservableSet) -> np.ndarray:
    if g.n != obs.n_parties:
        raise ValueError("width mismatch")
    return g.sign * local_product(obs, tilde_factors(g, obs))


# sum of squares -----------------------------------------------------------------

class SOSTerm(NamedTuple):
    prefactor: QSqrt2
    generator: PauliOp


def sos_recipe(s: StabilizerSet, weights=None) -> tuple[QSqrt2, tuple[SOSTerm, ...]]:
    """Shift and squared terms ``sum_i c_i (1 - G~_i)^2`` for a weighted generator sum.

    Generators acting on party 0 get ``c = w / sqrt2`` and contribute
    ``sqrt2 * w`` to the shift; the others get ``c = w / 2`` and contribute
    ``w``.  The party-0 anticommutator terms cancel only if the X- and
    Z-carrying prefactors balance, which is checked here.
    """
    ws = _weights(s, weights)
    terms, shift = [], ZERO
    bal_x = bal_z = ZERO
    for g, w in zip(s.generators, ws):
        c = g.letter(0)
        if c == "1":
            terms.append(SOSTerm(w / 2, g))
            shift = shift + w
        else:
            pref = w * ROOT2 / 2
            terms.append(SOSTerm(pref, g))
            shift = shift + w * ROOT2
            if c == "X":
                bal_x = bal_x + pref
            elif c == "Z":
                bal_z = bal_z + pref
            else:
                raise ValueError(f"{g} contains Y")
    if bal_x != bal_z:
        raise ValueError("party-0 X and Z weights do not balance; no SOS of this form")
    return shift, tuple(terms)


def verify_sos(expr: BellExpression, obs: ObservableSet, shift, recipe: Sequence[SOSTerm],
               dense_limit: int = DEFAULT_LIMITS.dense_limit) -> float:
    """Operator norm of ``shift*1 - B - sum_i c_i (1 - G~_i)^2``."""
    if not recipe:
        raise ValueError("empty SOS recipe")
    for t in recipe:
        if QSqrt2.of(t.prefactor) <= 0:
            raise ValueError("SOS prefactors must be positive")
        if t.generator.n != expr.n_parties:
            raise ValueError("recipe generator width mismatch")
    b = bell_operator(expr, obs, dense_limit)
    eye = np.eye(b.shape[0])
    rem = float(QSqrt2.of(shift)) * eye - b
    for t in recipe:
        d = eye - tilde_operator(t.generator, obs)
        rem -= float(t.prefactor) * (d @ d)
    rem = 0.5 * (rem + rem.conj().T)
    return float(np.max(np.abs(np.linalg.eigvalsh(rem))))


def max_sos_residual(expr: BellExpression, s: StabilizerSet, weights=None, trials: int = 100,
                     dims=(2,), seed: int = 0) -> float:
    shift, recipe = sos_recipe(s, weights)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for t in range(trials):
        d = dims[t % len(dims)]
        obs = random_observables(expr.n_parties, d, rng)
        worst = max(worst, verify_sos(expr, obs, shift, recipe))
    return worst


class SubspaceValue(NamedTuple):
    min: float
    max: float


def quantum_value_on_subspace(expr: BellExpression, s: StabilizerSet,
                              obs: ObservableSet | None = None,
                              dense_limit: int = DEFAULT_LIMITS.dense_limit) -> SubspaceValue:
    """Range of <psi|B|psi> over unit vectors of the stabilized subspace."""
    if obs is None:
        obs = canonical_observables(s.n)
    if obs.dims != (2,) * s.n:
        raise ValueError("subspace evaluation needs qubit observables")
    v = codeword_basis(s, dense_limit)
    b = bell_operator(expr, obs, dense_limit)
    proj = v.conj().T @ b @ v
    w = np.linalg.eigvalsh(0.5 * (proj + proj.conj().T))
    return SubspaceValue(float(w[0]), float(w[-1]))


def max_eigenvalue(expr: BellExpression, obs: ObservableSet | None = None,
                   dense_limit: int = DEFAULT_LIMITS.dense_limit) -> float:
    if obs is None:
        obs = canonical_observables(expr.n_parties)
    b = bell_operator(expr, obs, dense_limit)
    return float(np.linalg.eigvalsh(0.5 * (b + b.conj().T))[-1])
