"""Exact coefficient arithmetic over F_p and the rationals.

Scalars are plain Python values: ``int`` residues in ``[0, p)`` for a prime
characteristic, ``fractions.Fraction`` in characteristic 0. A :class:`Field`
carries the characteristic and does the arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = ["Field", "Scalar", "is_prime", "lucas_binomial", "base_digits", "QQ", "GF"]

Scalar = Union[int, Fraction]


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """The prime field F_p, or Q when ``characteristic == 0``."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError(f"characteristic must be an int, got {p!r}")
        if p != 0 and not is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, value) -> Scalar:
        return self.from_integer(value) if isinstance(value, int) else self.coerce(value)

    def from_integer(self, k: int) -> Scalar:
        if self.characteristic == 0:
            return Fraction(k)
        return k % self.characteristic

    def coerce(self, value) -> Scalar:
        """Map an int or Fraction into the field (denominators must be invertible)."""
        if isinstance(value, int):
            return self.from_integer(value)
        value = Fraction(value)
        if self.characteristic == 0:
            return value
        return self.div(self.from_integer(value.numerator), self.from_integer(value.denominator))

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def neg(self, a: Scalar) -> Scalar:
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + str(self))
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def format(self, a: Scalar) -> str:
        if self.characteristic == 0:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def parse(self, text: str) -> Scalar:
        """Parse ``"7"``, ``"-2"`` or ``"3/4"``."""
        text = text.strip()
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad coefficient {text!r}") from None
        if "." in text or "e" in text.lower():
            raise ValueError(f"bad coefficient {text!r}")
        return self.coerce(value)

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def base_digits(m: int, p: int) -> list[int]:
    """Base-``p`` digits of ``m``, least significant first."""
    digits = []
    while m:
        m, r = divmod(m, p)
        digits.append(r)
    return digits


def lucas_binomial(m: int, k: int, field: Field) -> Scalar:
    """Binomial coefficient C(m, k) as an element of ``field``.

    In characteristic p this multiplies the digitwise binomials of the base-p
    expansions of ``m`` and ``k``; in characteristic 0 it is the exact integer.
    """
    if m < 0 or k < 0:
        raise ValueError("m and k must be nonnegative")
    if k > m:
        return field.zero
    p = field.characteristic
    if p == 0:
        return Fraction(math.comb(m, k))
    result = 1
    while k:
        m, mi = divmod(m, p)
        k, ki = divmod(k, p)
        if ki > mi:
            return 0
        result = result * math.comb(mi, ki) % p
    return result
