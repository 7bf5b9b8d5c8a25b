"""N-qubit Pauli operators in symplectic GF(2) form with exact phase.

A :class:`PauliOp` stands for ``i**phase * prod_q X_q**x_q Z_q**z_q`` with the
x- and z-parts bit-packed into Python ints (bit q <-> qubit q, qubit 0 is the
leftmost character of the text form).  Products of such words stay in the
group, so the phase is tracked exactly as an exponent of ``i`` mod 4.

Text form: optional sign (``+``/``-``), optional ``i``, then one letter per
qubit from ``X Y Z 1`` (``I`` is accepted as an alias of ``1``).  Whitespace
is ignored.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .gf2 import GF2Matrix, bits_to_str

_LETTERS = {"1": (0, 0), "I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}


def _check_same_n(a: "PauliOp", b: "PauliOp") -> None:
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n} qubits")


@dataclass(frozen=True)
class PauliOp:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a Pauli word needs at least one qubit")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full or self.x < 0 or self.z < 0:
            raise ValueError(f"bit vectors wider than n={self.n}")
        object.__setattr__(self, "phase", self.phase % 4)

    # construction -----------------------------------------------------
    @classmethod
    def from_string(cls, s: str) -> "PauliOp":
        return pauli_from_string(s)

    @classmethod
    def identity(cls, n: int) -> "PauliOp":
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliOp":
        bx, bz = _LETTERS[letter]
        phase = 1 if letter == "Y" else 0
        return cls(n, bx << qubit, bz << qubit, phase)

    # views ---------------------------------------------------------------
    @property
    def y_count(self) -> int:
        return (self.x & self.z).bit_count()

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return self.support.bit_count()

    def letter(self, q: int) -> str:
        bx, bz = (self.x >> q) & 1, (self.z >> q) & 1
        return "1XZY"[bx + 2 * bz]

    @property
    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    @property
    def coefficient_exp(self) -> int:
        """Exponent c in ``i**c * (tensor product of X, Y, Z, 1)``."""
        return (self.phase - self.y_count) % 4

    @property
    def sign(self) -> int:
        """Overall +-1 of a Hermitian word."""
        c = self.coefficient_exp
        if c not in (0, 2):
            raise ValueError(f"{self} is not Hermitian")
        return 1 if c == 0 else -1

    def is_hermitian(self) -> bool:
        return self.coefficient_exp in (0, 2)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def symplectic_row(self) -> int:
        """``x | z << n`` as one 2n-bit row."""
        return self.x | (self.z << self.n)

    def __str__(self) -> str:
        return _PREFIX[self.coefficient_exp] + self.letters

    def __repr__(self) -> str:
        return f"PauliOp({str(self)!r})"

    # algebra ------------------------------------------------------------
    def __mul__(self, other: "PauliOp") -> "PauliOp":
        return multiply(self, other)

    def __neg__(self) -> "PauliOp":
        return PauliOp(self.n, self.x, self.z, self.phase + 2)

    def with_sign(self, sign: int) -> "PauliOp":
        return self if sign > 0 else -self

    def commutes(self, other: "PauliOp") -> bool:
        return commutes(self, other)

    def to_matrix(self) -> np.ndarray:
        return pauli_matrix(self)


def pauli_from_string(s: str) -> PauliOp:
    w = "".join(s.split())
    phase = 0
    if w[:1] in ("+", "-"):
        phase = 0 if w[0] == "+" else 2
        w = w[1:]
    if w[:1] == "i":
        phase += 1
        w = w[1:]
    if not w:
        raise ValueError(f"empty Pauli word: {s!r}")
    x = z = 0
    for q, c in enumerate(w):
        try:
            bx, bz = _LETTERS[c]
        except KeyError:
            raise ValueError(f"unknown character {c!r} in Pauli word {s!r}") from None
        x |= bx << q
        z |= bz << q
        phase += bx & bz  # Y = i X Z
    return PauliOp(len(w), x, z, phase)


_INDEXED = re.compile(r"([XYZ])_?(\d+)")


def pauli_from_indexed(s: str, n: int, sign: int = 1) -> PauliOp:
    """Parse sparse 1-based notation such as ``"X1Z2Z3X4"``."""
    w = "".join(s.split())
    if not w:
        return PauliOp.identity(n).with_sign(sign)
    pos = 0
    out = PauliOp.identity(n)
    for m in _INDEXED.finditer(w):
        if m.start() != pos:
            raise ValueError(f"cannot parse {s!r} at offset {pos}")
        pos = m.end()
        q = int(m.group(2)) - 1
        if not 0 <= q < n:
            raise ValueError(f"qubit index {q + 1} out of range for n={n}")
        if (out.support >> q) & 1:
            raise ValueError(f"qubit {q + 1} given twice in {s!r}")
        out = out * PauliOp.single(n, q, m.group(1))
    if pos != len(w):
        raise ValueError(f"cannot parse {s!r} at offset {pos}")
    return out.with_sign(sign)


def format_pauli(p: PauliOp) -> str:
    return str(p)


def multiply(a: PauliOp, b: PauliOp) -> PauliOp:
    """Exact group product ``a @ b``.

    Moving ``Z^{z_a}`` past ``X^{x_b}`` costs a factor ``(-1)`` per qubit where
    both are set.
    """
    _check_same_n(a, b)
    phase = a.phase + b.phase + 2 * (a.z & b.x).bit_count()
    return PauliOp(a.n, a.x ^ b.x, a.z ^ b.z, phase)


def product(ops: Iterable[PauliOp], n: int | None = None) -> PauliOp:
    ops = list(ops)
    if not ops:
        if n is None:
            raise ValueError("empty product needs n")
        return PauliOp.identity(n)
    return reduce(multiply, ops)


def local_anticommute_mask(a: PauliOp, b: PauliOp) -> int:
    """Bit q set iff the single-qubit factors of a and b anticommute on q."""
    _check_same_n(a, b)
    return (a.x & b.z) ^ (a.z & b.x)


def commutes(a: PauliOp, b: PauliOp) -> bool:
    return local_anticommute_mask(a, b).bit_count() % 2 == 0


def is_hermitian(p: PauliOp) -> bool:
    return p.is_hermitian()


# dense representation ---------------------------------------------------

def _kron_mask(bits: int, n: int) -> int:
    """Map qubit-q bit to basis-index bit (n-1-q), matching np.kron order."""
    out = 0
    for q in range(n):
        if (bits >> q) & 1:
            out |= 1 << (n - 1 - q)
    return out


def _action(p: PauliOp):
    n = p.n
    idx = np.arange(1 << n, dtype=np.int64)
    xm, zm = _kron_mask(p.x, n), _kron_mask(p.z, n)
    signs = 1 - 2 * (np.bitwise_count(idx & zm) & 1).astype(np.int8)
    coeff = 1j ** p.phase
    return idx ^ xm, coeff * signs


def apply_pauli(p: PauliOp, vecs: np.ndarray) -> np.ndarray:
    """Apply ``p`` to a state vector or to the columns of a matrix."""
    vecs = np.asarray(vecs)
    if vecs.shape[0] != 1 << p.n:
        raise ValueError("dimension mismatch")
    target, phases = _action(p)
    out = np.empty(vecs.shape, dtype=complex)
    if vecs.ndim == 1:
        out[target] = phases * vecs
    else:
        out[target] = phases[:, None] * vecs
    return out


def pauli_matrix(p: PauliOp) -> np.ndarray:
    dim = 1 << p.n
    target, phases = _action(p)
    m = np.zeros((dim, dim), dtype=complex)
    m[target, np.arange(dim)] = phases
    return m


_SINGLE = {
    "1": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix_kron(p: PauliOp) -> np.ndarray:
    """Reference dense matrix by explicit Kronecker products (test oracle)."""
    m = reduce(np.kron, [_SINGLE[c] for c in p.letters])
    return (1j ** p.coefficient_exp) * m


# bit-matrix views --------------------------------------------------------

def symplectic_matrix(ops: Sequence[PauliOp]) -> GF2Matrix:
    if not ops:
        raise ValueError("need at least one operator")
    n = ops[0].n
    for p in ops:
        if p.n != n:
            raise ValueError("width mismatch")
    return GF2Matrix(tuple(p.symplectic_row() for p in ops), 2 * n)


def mask_str(v: int, n: int) -> str:
    return bits_to_str(v, n)


# text / JSON formats ---------------------------------------------------------

def parse_pauli_text(text: str) -> list[PauliOp]:
    """One signed word per line; ``#`` starts a comment."""
    ops = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            ops.append(pauli_from_string(line))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return ops


def format_pauli_text(ops: Sequence[PauliOp], header: str | None = None) -> str:
    lines = []
    if header:
        lines += [f"# {h}" for h in header.splitlines()]
    lines += [str(p) for p in ops]
    return "\n".join(lines) + "\n"


def paulis_to_json(ops: Sequence[PauliOp]) -> dict:
    if not ops:
        raise ValueError("need at least one operator")
    return {"n": ops[0].n, "paulis": [str(p) for p in ops]}


def paulis_from_json(data: dict | str) -> list[PauliOp]:
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    ops = [pauli_from_string(s) for s in data["paulis"]]
    for p in ops:
        if p.n != n:
            raise ValueError(f"word {p} has {p.n} qubits, expected {n}")
    return ops


def load_paulis(text: str) -> list[PauliOp]:
    """Accept either the JSON or the line-based text form."""
    if text.lstrip().startswith("{"):
        return paulis_from_json(text)
    return parse_pauli_text(text)
