"""Elements of ℚ(x): a numerator and a nonzero denominator in ℚ[x]."""

from __future__ import annotations

import math
from collections.abc import Iterable
from fractions import Fraction
from typing import Any

from hnpkit.errors import UsageError
from hnpkit.polycore.polynomial import Polynomial, is_scalar
from hnpkit.polycore.sympy_bridge import polynomial_gcd, polynomial_lcm


class RationalFunction:
    coefficient_ring_element = True

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Polynomial, denominator: Polynomial | None = None) -> None:
        if denominator is None:
            denominator = Polynomial.constant(numerator.nvars, 1)
        if not denominator:
            raise UsageError("zero denominator in rational function")
        if numerator.nvars != denominator.nvars:
            raise UsageError("numerator and denominator live in different spaces")
        if numerator and not denominator.is_constant():
            g = polynomial_gcd(numerator, denominator)
            if not g.is_constant():
                numerator = numerator.exact_div(g)
                denominator = denominator.exact_div(g)
        elif not numerator:
            denominator = Polynomial.constant(numerator.nvars, 1)
        # the denominator is stored with leading coefficient 1
        _, lead = denominator.leading_grlex()
        self.numerator = numerator.scale(Fraction(1) / Fraction(lead))
        self.denominator = denominator.scale(Fraction(1) / Fraction(lead))

    @classmethod
    def from_scalar(cls, nvars: int, c: Any) -> RationalFunction:
        return cls(Polynomial.constant(nvars, c))

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def _lift(self, other: Any) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise UsageError("rational functions in different spaces")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if is_scalar(other):
            return RationalFunction.from_scalar(self.nvars, other)
        return None

    def __add__(self, other: Any) -> RationalFunction:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.denominator == o.denominator:
            return RationalFunction(self.numerator + o.numerator, self.denominator)
        return RationalFunction(
            self.numerator * o.denominator + o.numerator * self.denominator,
            self.denominator * o.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other: Any) -> RationalFunction:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> RationalFunction:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> RationalFunction:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> RationalFunction:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.numerator * o.denominator, self.denominator * o.numerator)

    def __rtruediv__(self, other: Any) -> RationalFunction:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __bool__(self) -> bool:
        return bool(self.numerator)

    def __eq__(self, other: object) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.numerator * o.denominator == o.numerator * self.denominator

    def __hash__(self) -> int:
        if self.is_polynomial():
            return hash(self.numerator)
        return hash((self.numerator, self.denominator))

    def evaluate(self, point: list[Any]) -> Fraction:
        den = self.denominator.evaluate(point)
        if not den:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return Fraction(self.numerator.evaluate(point)) / den

    def __repr__(self) -> str:
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"


def as_fraction_parts(c: Any, nvars: int) -> tuple[int, Polynomial, int, Polynomial]:
    """Split a ℚ(x) coefficient into (a, N, b, D) with c = a*N / (b*D).

    N and D have coprime integer coefficients, D has a positive leading
    coefficient, and a, b are integers with b > 0.
    """
    if isinstance(c, RationalFunction):
        num, den = c.numerator, c.denominator
    elif isinstance(c, Polynomial):
        num, den = c, Polynomial.constant(nvars, 1)
    else:
        num, den = Polynomial.constant(nvars, c), Polynomial.constant(nvars, 1)
    if not den:
        raise UsageError("zero denominator in coefficient")
    n_cont, n_prim = num.primitive() if num else (Fraction(0), num)
    d_cont, d_prim = den.primitive()
    _, lead = d_prim.leading_grlex()
    if lead < 0:
        d_prim, d_cont = -d_prim, -d_cont
    ratio = n_cont / d_cont
    return ratio.numerator, n_prim, ratio.denominator, d_prim


def denominator_lcm(coefficients: Iterable[Any], nvars: int) -> tuple[int, Polynomial]:
    """Integer lcm and primitive polynomial lcm of the denominators of ℚ(x) coefficients."""
    int_lcm = 1
    poly_lcm = Polynomial.constant(nvars, 1)
    for c in coefficients:
        _, _, b, d = as_fraction_parts(c, nvars)
        int_lcm = math.lcm(int_lcm, b)
        if not d.is_constant():
            poly_lcm = d if poly_lcm.is_constant() else polynomial_lcm(poly_lcm, d)
    if not poly_lcm.is_constant():
        _, lead = poly_lcm.leading_grlex()
        if lead < 0:
            poly_lcm = -poly_lcm
    return int_lcm, poly_lcm
