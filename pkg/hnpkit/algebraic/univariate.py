"""Dense univariate polynomials over ℤ, ℚ or ℚ[x] (``Polynomial`` coefficients)."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from fractions import Fraction
from typing import Any

from hnpkit.errors import PreconditionError, UsageError
from hnpkit.polycore.polynomial import NEG_INFINITY, Polynomial, coeff_exact_div, normalize_scalar
from hnpkit.polycore.rational_function import RationalFunction, as_fraction_parts, denominator_lcm


def field_div(a: Any, b: Any) -> Any:
    """a / b, exact over ℚ and exact-or-raise over ℚ[x]."""
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return normalize_scalar(Fraction(a) / b)
    return coeff_exact_div(a, b)


class UnivarPoly:
    """Coefficients c0..cN, lowest degree first; the leading coefficient is nonzero."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Any]) -> None:
        coeffs = [normalize_scalar(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_polynomial(cls, poly: Polynomial, index: int) -> UnivarPoly:
        """Read ``poly`` as a polynomial in variable ``index`` over the remaining variables."""
        parts = poly.coefficients_in(index)
        top = max(parts, default=-1)
        zero = Polynomial.zero(poly.nvars - 1)
        return cls([parts.get(e, zero) for e in range(top + 1)])

    def to_polynomial(self, nvars: int, index: int, positions: Sequence[int] = ()) -> Polynomial:
        """Inverse of ``from_polynomial``; ``positions`` places the coefficient variables."""
        total = Polynomial.zero(nvars)
        var = Polynomial.variable(nvars, index)
        for e, c in enumerate(self.coeffs):
            if isinstance(c, Polynomial):
                lifted = c.embed(nvars, list(positions))
            else:
                lifted = Polynomial.constant(nvars, c)
            total = total + lifted * var**e
        return total

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def lc(self) -> Any:
        if not self.coeffs:
            raise UsageError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def _lift(self, other: Any) -> UnivarPoly:
        return other if isinstance(other, UnivarPoly) else UnivarPoly([other])

    def __add__(self, other: Any) -> UnivarPoly:
        o = self._lift(other)
        size = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [0] * (size - len(self.coeffs))
        b = list(o.coeffs) + [0] * (size - len(o.coeffs))
        return UnivarPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> UnivarPoly:
        return UnivarPoly([-c for c in self.coeffs])

    def __sub__(self, other: Any) -> UnivarPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> UnivarPoly:
        return self._lift(other) + (-self)

    def __mul__(self, other: Any) -> UnivarPoly:
        if not isinstance(other, UnivarPoly):
            return UnivarPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UnivarPoly([])
        out: list[Any] = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UnivarPoly(out)

    def __rmul__(self, other: Any) -> UnivarPoly:
        return UnivarPoly([other * c for c in self.coeffs])

    def __pow__(self, exponent: int) -> UnivarPoly:
        result = UnivarPoly([1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UnivarPoly):
            return self.coeffs == other.coeffs
        return len(self.coeffs) <= 1 and (self.coeffs[0] if self.coeffs else 0) == other

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UnivarPoly({list(self.coeffs)!r})"

    def map_coefficients(self, fn: Callable[[Any], Any]) -> UnivarPoly:
        return UnivarPoly([fn(c) for c in self.coeffs])

    def evaluate(self, value: Any) -> Any:
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, inner: UnivarPoly) -> UnivarPoly:
        acc = UnivarPoly([])
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> UnivarPoly:
        return UnivarPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> UnivarPoly:
        lead = self.lc
        return UnivarPoly([field_div(c, lead) for c in self.coeffs])

    def divmod(self, divisor: UnivarPoly) -> tuple[UnivarPoly, UnivarPoly]:
        """Division with remainder; every quotient step must divide exactly in the coefficient ring."""
        if not divisor:
            raise ZeroDivisionError("univariate division by zero")
        rem = list(self.coeffs)
        dd = len(divisor.coeffs) - 1
        lead = divisor.lc
        quotient: list[Any] = [0] * max(len(rem) - dd, 0)
        for shift in range(len(rem) - dd - 1, -1, -1):
            top = rem[shift + dd]
            if not top:
                continue
            q = field_div(top, lead)
            quotient[shift] = q
            for i, c in enumerate(divisor.coeffs):
                rem[shift + i] = rem[shift + i] - q * c
        return UnivarPoly(quotient), UnivarPoly(rem[:dd] if dd > 0 else [])

    def rem_monic(self, divisor: UnivarPoly) -> UnivarPoly:
        """Remainder modulo a monic divisor; stays in the coefficient ring."""
        if not divisor.is_monic():
            raise PreconditionError("division by a non-monic polynomial")
        return self.divmod(divisor)[1]


def univariate_gcd(a: UnivarPoly, b: UnivarPoly) -> UnivarPoly:
    """Monic gcd over ℚ by the Euclidean algorithm."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic() if a else a


def from_scalars(coeffs: Sequence[int | Fraction]) -> UnivarPoly:
    return UnivarPoly(list(coeffs))


def parameter_count(*polys: UnivarPoly) -> int | None:
    """Number of parameters in the coefficients, or None when every coefficient is a scalar."""
    for p in polys:
        for c in p.coeffs:
            if isinstance(c, (Polynomial, RationalFunction)):
                return c.nvars
    return None


def has_fraction_coefficients(*polys: UnivarPoly) -> bool:
    return any(isinstance(c, RationalFunction) for p in polys for c in p.coeffs)


def clear_coefficient_denominators(p: UnivarPoly, m: int) -> tuple[UnivarPoly, Polynomial]:
    """(d·p, d) with d the lcm of the coefficient denominators, so d·p has ℚ[x] coefficients."""
    int_lcm, poly_lcm = denominator_lcm(p.coeffs, m)
    d = poly_lcm.scale(int_lcm)
    coeffs = []
    for c in p.coeffs:
        a, num, b, den = as_fraction_parts(c, m)
        coeffs.append((num * d).scale(Fraction(a, b)).exact_div(den))
    return UnivarPoly(coeffs), d


def polynomial_quotient(num: Polynomial, den: Polynomial) -> Polynomial | RationalFunction:
    """num / den, collapsed to a polynomial when the quotient has one."""
    value = RationalFunction(num, den)
    if value.is_polynomial():
        return value.numerator.scale(Fraction(1) / Fraction(value.denominator.constant_coefficient()))
    return value
