"""Exact ground fields: prime fields F_p and the rationals.

Internally every algorithm works on *raw* field elements: plain ``int``
residues in ``range(p)`` for prime fields and ``fractions.Fraction`` for the
rationals.  Generic code computes with the ordinary Python operators and
then calls :meth:`Field.reduce` to return to canonical form.  The
:class:`Scalar` wrapper carries its field along and is what the public
scalar API hands out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

from .errors import DivisionByZero, FieldMismatch

Raw = Union[int, Fraction]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for q in range(3, math.isqrt(p) + 1, 2):
        if p % q == 0:
            return False
    return True


@dataclass(frozen=True)
class Field:
    kind: Literal["prime", "rational"]
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not (2 <= self.p < 2**31) or not _is_prime(self.p):
                raise ValueError(f"prime field needs a prime 2 <= p < 2^31, got {self.p!r}")
        elif self.kind == "rational":
            if self.p is not None:
                raise ValueError("the rational field carries no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # -- descriptors -------------------------------------------------------
    @property
    def char(self) -> int:
        return self.p if self.kind == "prime" else 0

    @property
    def is_finite(self) -> bool:
        return self.kind == "prime"

    @property
    def size(self) -> int | None:
        return self.p

    def __str__(self):
        return f"F{self.p}" if self.kind == "prime" else "Q"

    # -- raw arithmetic ----------------------------------------------------
    @property
    def zero(self) -> Raw:
        return 0 if self.kind == "prime" else Fraction(0)

    @property
    def one(self) -> Raw:
        return 1 if self.kind == "prime" else Fraction(1)

    def reduce(self, x) -> Raw:
        # hot path: plain ints over F_p, Fractions over Q
        if type(x) is int and self.p is not None:
            return x % self.p
        if type(x) is Fraction and self.p is None:
            return x
        if self.kind == "prime":
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return x % self.p
        return Fraction(x)

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.kind == "prime":
            return pow(a, -1, self.p)
        return 1 / a

    def elements(self):
        """Iterate the elements of a prime field in increasing residue order."""
        if self.kind != "prime":
            raise ValueError("the rationals are not enumerable")
        return range(self.p)

    def nonzero(self):
        return range(1, self.p)

    def sign(self, s: int) -> Raw:
        """Embed +1 / -1 / 0."""
        return self.reduce(s)

    # -- serialization -----------------------------------------------------
    def parse(self, text: str | int) -> Raw:
        if isinstance(text, int):
            return self.reduce(text)
        text = text.strip()
        try:
            value = Fraction(text)
        except ValueError as exc:
            raise ValueError(f"not a scalar: {text!r}") from exc
        if self.kind == "prime" and value.denominator % self.p == 0:
            raise DivisionByZero(f"{text!r} has a denominator divisible by {self.p}")
        return self.reduce(value)

    def format(self, a: Raw) -> str:
        if self.kind == "prime":
            return str(a)
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.parse(value) if isinstance(value, str) else self.reduce(value))


def GF(p: int) -> Field:
    return Field("prime", p)


QQ = Field("rational")


def parse_field(text: str) -> Field:
    """``"F5"``/``"GF(5)"``/``"5"`` -> F_5, ``"Q"`` -> rationals."""
    t = text.strip().upper()
    if t in ("Q", "QQ", "RATIONAL"):
        return QQ
    for prefix in ("GF(", "F"):
        if t.startswith(prefix):
            t = t[len(prefix):].rstrip(")")
            break
    return GF(int(t))


@dataclass(frozen=True)
class Scalar:
    """A canonical field element tagged with its field."""

    field: Field
    value: Raw

    def _check(self, other: "Scalar"):
        if not isinstance(other, Scalar):
            return Scalar(self.field, self.field.reduce(other))
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.reduce(self.value + other.value))

    __radd__ = __add__

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.reduce(self.value * other.value))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.reduce(-self.value))

    def __sub__(self, other):
        return self + (-self._check(other))

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.format(self.value)


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Single entry point for add / mul / neg / inv on tagged scalars."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown scalar op {op!r}")
