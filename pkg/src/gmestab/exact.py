"""Exact numbers of the form a + b*sqrt(2) with rational a, b."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

SQRT2 = math.sqrt(2.0)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot convert {v!r} exactly")


@dataclass(frozen=True, order=False)
class QSqrt2:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))

    @classmethod
    def of(cls, v) -> "QSqrt2":
        if isinstance(v, QSqrt2):
            return v
        return cls(_frac(v), Fraction(0))

    @classmethod
    def sqrt2(cls) -> "QSqrt2":
        return cls(0, 1)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * SQRT2

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __add__(self, o):
        o = QSqrt2.of(o)
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-QSqrt2.of(o))

    def __rsub__(self, o):
        return QSqrt2.of(o) - self

    def __mul__(self, o):
        o = QSqrt2.of(o)
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = QSqrt2.of(o)
        norm = o.a * o.a - 2 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        conj = QSqrt2(o.a / norm, -o.b / norm)
        return self * conj

    def signum(self) -> int:
        a, b = self.a, self.b
        if a >= 0 and b >= 0:
            return 0 if a == 0 and b == 0 else 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: compare a^2 with 2 b^2
        lhs, rhs = a * a, 2 * b * b
        if a > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def __eq__(self, o):
        try:
            o = QSqrt2.of(o)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, o):
        return (self - o).signum() < 0

    def __le__(self, o):
        return (self - o).signum() <= 0

    def __gt__(self, o):
        return (self - o).signum() > 0

    def __ge__(self, o):
        return (self - o).signum() >= 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt2"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt2"

    def __repr__(self):
        return f"QSqrt2({self})"

    def to_json(self) -> dict:
        def enc(f: Fraction):
            return f.numerator if f.denominator == 1 else str(f)

        return {"a": enc(self.a), "b": enc(self.b)}

    @classmethod
    def from_json(cls, d) -> "QSqrt2":
        if isinstance(d, (int, str)):
            return cls.of(d)
        return cls(_frac(d.get("a", 0)), _frac(d.get("b", 0)))


ZERO = QSqrt2()
ONE = QSqrt2(1)
ROOT2 = QSqrt2.sqrt2()
