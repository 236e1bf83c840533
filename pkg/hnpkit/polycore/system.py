"""Parametric polynomials f ∈ ℤ[x][y] and systems of them."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from hnpkit.errors import PreconditionError, UsageError
from hnpkit.polycore.fields import GF
from hnpkit.polycore.polynomial import Polynomial, sum_polynomials
from hnpkit.polycore.rational_function import RationalFunction, as_fraction_parts, denominator_lcm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParamPolynomial:
    """``poly / denominator`` on the joint (x, y) space, parameters first.

    ``denominator`` is either None or a polynomial in the x block only.
    """

    poly: Polynomial
    m: int
    n: int
    denominator: Polynomial | None = None

    def __post_init__(self) -> None:
        if self.poly.nvars != self.m + self.n:
            raise UsageError(
                f"polynomial has {self.poly.nvars} variables, expected m + n = {self.m + self.n}"
            )
        if self.denominator is not None and self.denominator.involves(self.y_indices):
            raise UsageError("denominators may only involve parameters")

    @property
    def x_indices(self) -> range:
        return range(self.m)

    @property
    def y_indices(self) -> range:
        return range(self.m, self.m + self.n)

    def deg_x(self) -> int | float:
        return self.poly.degree_in(self.x_indices)

    def deg_y(self) -> int | float:
        return self.poly.degree_in(self.y_indices)

    def total_degree(self) -> int | float:
        return self.poly.degree()

    def is_integral(self) -> bool:
        if self.denominator is not None and not self.denominator.is_constant():
            return False
        if self.denominator is not None and self.denominator.constant_coefficient() != 1:
            return False
        return all(isinstance(c, int) for c in self.poly.coefficients())

    def coefficient_form(self) -> Polynomial:
        """The same element as a polynomial in y whose coefficients lie in ℚ(x)."""
        den = None
        if self.denominator is not None:
            den = self.denominator.restrict(list(self.x_indices))
        parts: dict[tuple[int, ...], Polynomial] = {}
        for mono, c in self.poly.terms.items():
            x_mono, y_mono = mono[: self.m], mono[self.m :]
            prev = parts.get(y_mono)
            term = Polynomial(self.m, {x_mono: c})
            parts[y_mono] = term if prev is None else prev + term
        return Polynomial(
            self.n,
            {y: RationalFunction(num, den) for y, num in parts.items()},
        )

    @classmethod
    def from_joint(cls, poly: Polynomial, m: int) -> ParamPolynomial:
        return cls(poly, m, poly.nvars - m)


@dataclass(frozen=True)
class PolynomialSystem:
    polys: tuple[ParamPolynomial, ...]
    m: int
    n: int
    param_names: tuple[str, ...] = field(default=())
    var_names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        for f in self.polys:
            if (f.m, f.n) != (self.m, self.n):
                raise UsageError(f"polynomial split ({f.m}, {f.n}) differs from system ({self.m}, {self.n})")
        if not self.param_names:
            object.__setattr__(self, "param_names", tuple(f"x{i + 1}" for i in range(self.m)))
        if not self.var_names:
            object.__setattr__(self, "var_names", tuple(f"y{i + 1}" for i in range(self.n)))
        if len(self.param_names) != self.m or len(self.var_names) != self.n:
            raise UsageError("name lists do not match (m, n)")

    @classmethod
    def from_polynomials(
        cls,
        polys: Sequence[Polynomial],
        m: int,
        n: int,
        param_names: Sequence[str] = (),
        var_names: Sequence[str] = (),
    ) -> PolynomialSystem:
        return cls(
            tuple(ParamPolynomial(p, m, n) for p in polys),
            m,
            n,
            tuple(param_names),
            tuple(var_names),
        )

    @property
    def k(self) -> int:
        return len(self.polys)

    @property
    def s(self) -> int:
        """Size measure max(m, n, k); meaningful once the system is normalized."""
        return max(self.m, self.n, self.k)

    @property
    def names(self) -> tuple[str, ...]:
        return self.param_names + self.var_names

    def joint(self) -> list[Polynomial]:
        return [f.poly for f in self.polys]

    def is_integral(self) -> bool:
        return all(f.is_integral() for f in self.polys)

    def cleared(self) -> PolynomialSystem:
        """Equivalent system with ℤ[x] coefficients."""
        if self.is_integral():
            return self
        polys = clear_denominators([f.coefficient_form() for f in self.polys], self.m)
        return PolynomialSystem(tuple(polys), self.m, self.n, self.param_names, self.var_names)

    def with_polys(self, polys: Sequence[Polynomial]) -> PolynomialSystem:
        return PolynomialSystem.from_polynomials(polys, self.m, self.n, self.param_names, self.var_names)


def specialize(f: ParamPolynomial, alpha: Sequence[int]) -> Polynomial:
    """f(α, y) as a polynomial on the y block."""
    if len(alpha) != f.m:
        raise UsageError(f"alpha has length {len(alpha)}, expected m = {f.m}")
    if f.denominator is not None and not f.denominator.is_constant():
        raise PreconditionError("clear denominators before specializing")
    values = {i: a for i, a in enumerate(alpha)}
    poly = f.poly.substitute(values)
    if f.denominator is not None:
        poly = poly.scale(Fraction(1) / Fraction(f.denominator.constant_coefficient()))
    return poly.restrict(list(f.y_indices))


def specialize_system(S: PolynomialSystem, alpha: Sequence[int]) -> list[Polynomial]:
    if len(alpha) != S.m:
        raise UsageError(f"alpha has length {len(alpha)}, expected m = {S.m}")
    return [specialize(f, alpha) for f in S.polys]


def reduce_mod_p(f: Polynomial, p: int) -> Polynomial:
    """Coefficients mapped into 𝔽_p; terms vanishing mod p disappear."""
    field_ = GF(p)
    return f.map_coefficients(field_.convert)


def clear_denominators(polys: Sequence[Polynomial], m: int) -> list[ParamPolynomial]:
    """Scale each polynomial in y over ℚ(x) by the lcm of its coefficient denominators.

    Input polynomials live on the y block; their coefficients are
    ``RationalFunction``s (or scalars / polynomials) in m parameters.
    """
    out: list[ParamPolynomial] = []
    for f in polys:
        n = f.nvars
        int_lcm, poly_lcm = denominator_lcm(f.coefficients(), m)
        terms: list[Polynomial] = []
        for y_mono, c in f.terms.items():
            a, num, b, den = as_fraction_parts(c, m)
            factor = poly_lcm.exact_div(den)
            coeff = (num * factor).scale(a * (int_lcm // b))
            terms.append(_attach_y(coeff, y_mono, m, n))
        out.append(ParamPolynomial(sum_polynomials(m + n, terms), m, n))
    logger.debug(f"cleared denominators of {len(out)} polynomials")
    return out


def _attach_y(x_coeff: Polynomial, y_mono: tuple[int, ...], m: int, n: int) -> Polynomial:
    return Polynomial(m + n, {x_mono + tuple(y_mono): c for x_mono, c in x_coeff.terms.items()})


def raw_size(S: PolynomialSystem) -> int:
    """Size before normalization: max of m, n, k and the bit length of every coefficient and exponent."""
    size = max(S.m, S.n, S.k)
    for f in S.polys:
        for mono, c in f.poly.terms.items():
            frac = Fraction(c)
            size = max(size, abs(frac.numerator).bit_length(), frac.denominator.bit_length())
            size = max([size] + [e.bit_length() for e in mono])
    return size


def evaluate_joint(f: ParamPolynomial, point: Sequence[Any]) -> Any:
    value = f.poly.evaluate(point)
    if f.denominator is not None:
        return Fraction(value) / Fraction(f.denominator.evaluate(point))
    return value
