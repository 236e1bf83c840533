"""Coefficient domains: ℤ (int), ℚ (Fraction) and prime fields 𝔽_p."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any

import sympy

from hnpkit.errors import UsageError


def is_prime(p: int) -> bool:
    return isinstance(p, int) and p >= 2 and bool(sympy.isprime(p))


class PrimeFieldElem:
    """Residue in {0..p-1} tagged with its prime modulus p."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int) -> None:
        self.value = value % modulus
        self.modulus = modulus

    def _coerce(self, other: Any) -> int | None:
        if isinstance(other, PrimeFieldElem):
            if other.modulus != self.modulus:
                raise UsageError(
                    f"cannot mix residues modulo {self.modulus} and {other.modulus}"
                )
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        if isinstance(other, Fraction):
            if other.denominator % self.modulus == 0:
                raise UsageError(f"{other} has no image modulo {self.modulus}")
            return other.numerator * pow(other.denominator, -1, self.modulus) % self.modulus
        return None

    def __add__(self, other: Any) -> PrimeFieldElem:
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElem(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Any) -> PrimeFieldElem:
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElem(self.value - v, self.modulus)

    def __rsub__(self, other: Any) -> PrimeFieldElem:
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElem(v - self.value, self.modulus)

    def __mul__(self, other: Any) -> PrimeFieldElem:
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElem(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> PrimeFieldElem:
        return PrimeFieldElem(-self.value, self.modulus)

    def inverse(self) -> PrimeFieldElem:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse modulo {self.modulus}")
        return PrimeFieldElem(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other: Any) -> PrimeFieldElem:
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self * PrimeFieldElem(v, self.modulus).inverse()

    def __rtruediv__(self, other: Any) -> PrimeFieldElem:
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElem(v, self.modulus) * self.inverse()

    def __pow__(self, exponent: int) -> PrimeFieldElem:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return PrimeFieldElem(pow(self.value, exponent, self.modulus), self.modulus)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PrimeFieldElem):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus})"

    def __str__(self) -> str:
        return str(self.value)


class RationalField:
    """ℚ with elements represented as Fraction."""

    characteristic = 0
    name = "QQ"

    def convert(self, c: Any) -> Fraction:
        if isinstance(c, PrimeFieldElem):
            raise UsageError("cannot lift a residue to QQ")
        return Fraction(c)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "QQ"


class PrimeField:
    def __init__(self, p: int) -> None:
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        self.characteristic = p
        self.name = f"GF({p})"

    def convert(self, c: Any) -> PrimeFieldElem:
        p = self.characteristic
        if isinstance(c, PrimeFieldElem):
            if c.modulus != p:
                raise UsageError(f"cannot mix residues modulo {c.modulus} and {p}")
            return c
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise UsageError(f"{c} has no image modulo {p}")
            return PrimeFieldElem(c.numerator * pow(c.denominator, -1, p), p)
        return PrimeFieldElem(int(c), p)

    @property
    def zero(self) -> PrimeFieldElem:
        return PrimeFieldElem(0, self.characteristic)

    @property
    def one(self) -> PrimeFieldElem:
        return PrimeFieldElem(1, self.characteristic)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("GF", self.characteristic))

    def __repr__(self) -> str:
        return self.name


Field = RationalField | PrimeField

QQ = RationalField()


@lru_cache(maxsize=256)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str) -> Field:
    """'q' / 'QQ' for the rationals, 'fp:<p>' for 𝔽_p."""
    text = spec.strip().lower()
    if text in ("q", "qq"):
        return QQ
    if text.startswith("fp:"):
        try:
            return GF(int(text[3:]))
        except ValueError as e:
            raise UsageError(f"bad field specification {spec!r}") from e
    raise UsageError(f"unknown field {spec!r}; expected q or fp:<p>")
