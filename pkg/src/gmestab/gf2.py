"""Linear algebra over Z_2 on bit-packed rows.

A row is a Python ``int`` whose bit ``j`` holds column ``j``.  Python ints are
arbitrary precision, so the width is limited only by memory and XOR/AND run
limb-wise in C.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def parity(v: int) -> int:
    return v.bit_count() & 1


def dot(u: int, v: int) -> int:
    """Standard bilinear form on Z_2^n: parity of the bitwise AND."""
    return (u & v).bit_count() & 1


def bits_to_str(v: int, n: int) -> str:
    """Render ``v`` with column 0 first, e.g. ``0b011 -> '110'`` for n=3."""
    return "".join("1" if (v >> j) & 1 else "0" for j in range(n))


def str_to_bits(s: str) -> int:
    s = "".join(s.split())
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a bit string: {s!r}")
    return sum(1 << j for j, c in enumerate(s) if c == "1")


def unit(j: int) -> int:
    return 1 << j


@dataclass(frozen=True)
class GF2Matrix:
    """Immutable matrix over Z_2 stored as a tuple of bit-packed rows."""

    rows: tuple[int, ...]
    n_cols: int

    def __post_init__(self):
        if self.n_cols < 0:
            raise ValueError("n_cols must be nonnegative")
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        limit = 1 << self.n_cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} does not fit in {self.n_cols} columns")

    @classmethod
    def from_strings(cls, rows: Iterable[str], n_cols: int | None = None) -> "GF2Matrix":
        rows = ["".join(r.split()) for r in rows]
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        if any(len(r) != n_cols for r in rows):
            raise ValueError("all rows must have the same width")
        return cls(tuple(str_to_bits(r) for r in rows), n_cols)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[int]:
        return iter(self.rows)

    def to_strings(self) -> list[str]:
        return [bits_to_str(r, self.n_cols) for r in self.rows]

    def to_array(self):
        import numpy as np

        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.n_cols):
                out[i, j] = (r >> j) & 1
        return out

    def transpose(self) -> "GF2Matrix":
        cols = []
        for j in range(self.n_cols):
            c = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    c |= 1 << i
            cols.append(c)
        return GF2Matrix(tuple(cols), self.n_rows)

    def apply(self, v: int) -> int:
        """Matrix-vector product ``M v`` as a bit-packed column (bit i = row i)."""
        out = 0
        for i, r in enumerate(self.rows):
            if dot(r, v):
                out |= 1 << i
        return out

    def rank(self) -> int:
        return gf2_rank(self)

    def kernel(self) -> "GF2Matrix":
        return gf2_kernel(self)


def _echelon(rows: Sequence[int]) -> dict[int, int]:
    """Reduce rows to an echelon basis keyed by leading (lowest) set bit."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            piv = basis.get(low)
            if piv is None:
                basis[low] = r
                break
            r ^= piv
    return basis


def gf2_rank(m: GF2Matrix | Sequence[int]) -> int:
    rows = m.rows if isinstance(m, GF2Matrix) else tuple(m)
    return len(_echelon(rows))


def gf2_rref(m: GF2Matrix) -> tuple[list[int], list[int]]:
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``pivots[i]`` is the pivot column of
    ``rows[i]`` and every pivot column is zero in all other rows.
    """
    rows = [r for r in _echelon(m.rows).values()]
    rows.sort(key=lambda r: (r & -r))
    pivots = [(r & -r).bit_length() - 1 for r in rows]
    for i, p in enumerate(pivots):
        bit = 1 << p
        for j in range(len(rows)):
            if j != i and rows[j] & bit:
                rows[j] ^= rows[i]
    return rows, pivots


def gf2_kernel(m: GF2Matrix) -> GF2Matrix:
    """Basis of the right null space ``{v : M v = 0}``.

    ``rank(M) + len(kernel) == M.n_cols``.  For the left null space (row
    combinations summing to zero) use ``gf2_kernel(M.transpose())``.
    """
    rows, pivots = gf2_rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.n_cols):
        if f in pivot_set:
            continue
        v = 1 << f
        for r, p in zip(rows, pivots):
            if (r >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return GF2Matrix(tuple(basis), m.n_cols)


def left_kernel(m: GF2Matrix) -> GF2Matrix:
    """Basis of ``{c : sum_i c_i rows[i] = 0}``; bit i of c selects row i."""
    return gf2_kernel(m.transpose())


def in_span(v: int, rows: Sequence[int]) -> bool:
    basis = _echelon(rows)
    while v:
        piv = basis.get(v & -v)
        if piv is None:
            return False
        v ^= piv
    return True


def span(rows: Sequence[int]) -> Iterator[int]:
    """Enumerate every element of the span (2^rank of them) by Gray code."""
    basis = list(_echelon(rows).values())
    v = 0
    yield v
    for g in range(1, 1 << len(basis)):
        v ^= basis[(g & -g).bit_length() - 1]
        yield v
