"""Sparse multivariate polynomials over a generic coefficient ring.

Coefficients may be ``int``, ``Fraction``, ``PrimeFieldElem`` or any other
ring element that supports ``+ - *`` and truthiness (``RationalFunction`` is
used as a coefficient by the parser path). A ``Polynomial`` is never used as
the coefficient of another ``Polynomial``; anything that is not a
``Polynomial`` is treated as a scalar.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping, Sequence
from fractions import Fraction
from typing import Any

from hnpkit.errors import InexactDivisionError, UsageError
from hnpkit.polycore.fields import PrimeFieldElem
from hnpkit.polycore.monomial import Monomial, mono_divides, mono_div, mono_mul

NEG_INFINITY = float("-inf")


def is_scalar(c: Any) -> bool:
    """Coefficient-ring elements that may be lifted to constant polynomials."""
    return isinstance(c, (int, Fraction, PrimeFieldElem)) or getattr(
        type(c), "coefficient_ring_element", False
    )


def grlex_key(mono: Monomial) -> tuple[int, Monomial]:
    return (sum(mono), mono)


def normalize_scalar(c: Any) -> Any:
    """Integral fractions become ints so that ℤ and ℚ data compare and hash alike."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def coeff_exact_div(a: Any, b: Any) -> Any:
    """Exact quotient a / b in the coefficient ring; raises when b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by zero coefficient")
    if not a:
        return a
    if isinstance(a, Polynomial):
        return a.exact_div(b)
    if isinstance(b, Polynomial):
        if not b.is_constant():
            raise InexactDivisionError("scalar divided by a non-constant polynomial")
        return coeff_exact_div(a, b.constant_coefficient())
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise InexactDivisionError(f"{b} does not divide {a}")
        return q
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return normalize_scalar(Fraction(a) / b)
    return a / b


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Any] | None = None) -> None:
        self.nvars = nvars
        clean: dict[Monomial, Any] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise UsageError(f"exponent {mono} does not match {nvars} variables")
            if c:
                clean[tuple(mono)] = normalize_scalar(c)
        self.terms = clean
        self._hash: int | None = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: Any) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int, coefficient: Any = 1) -> Polynomial:
        if not 0 <= index < nvars:
            raise UsageError(f"variable index {index} out of range for {nvars} variables")
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {mono: coefficient})

    @classmethod
    def monomial(cls, mono: Monomial, c: Any = 1) -> Polynomial:
        return cls(len(mono), {mono: c})

    # -- inspection -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_coefficient(self) -> Any:
        return self.terms.get((0,) * self.nvars, 0)

    def coefficients(self) -> list[Any]:
        return list(self.terms.values())

    def degree(self) -> int | float:
        """Total degree; the zero polynomial has degree NEG_INFINITY."""
        if not self.terms:
            return NEG_INFINITY
        return max(sum(m) for m in self.terms)

    def degree_in(self, indices: Iterable[int]) -> int | float:
        idx = tuple(indices)
        if not self.terms:
            return NEG_INFINITY
        return max(sum(m[i] for i in idx) for m in self.terms)

    def involves(self, indices: Iterable[int]) -> bool:
        idx = tuple(indices)
        return any(m[i] for m in self.terms for i in idx)

    def sorted_terms(self) -> list[tuple[Monomial, Any]]:
        """Terms in canonical graded-lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _lift(self, other: Any) -> Polynomial | None:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise UsageError(
                    f"polynomials live in different spaces ({self.nvars} vs {other.nvars} variables)"
                )
            return other
        if is_scalar(other):
            return Polynomial.constant(self.nvars, other)
        return None

    def __add__(self, other: Any) -> Polynomial:
        q = self._lift(other)
        if q is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in q.terms.items():
            v = out.get(mono)
            out[mono] = c if v is None else v + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Any) -> Polynomial:
        q = self._lift(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other: Any) -> Polynomial:
        q = self._lift(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other: Any) -> Polynomial:
        if not isinstance(other, Polynomial):
            if is_scalar(other):
                return self.scale(other)
            return NotImplemented
        q = self._lift(other)
        out: dict[Monomial, Any] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in q.terms.items():
                mono = mono_mul(m1, m2)
                v = out.get(mono)
                out[mono] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.nvars, out)

    def __rmul__(self, other: Any) -> Polynomial:
        if not is_scalar(other):
            return NotImplemented
        return self.scale(other)

    def scale(self, c: Any) -> Polynomial:
        if not c:
            return Polynomial(self.nvars)
        return Polynomial(self.nvars, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: Any) -> Polynomial:
        return Polynomial(self.nvars, {mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __pow__(self, exponent: int) -> Polynomial:
        if not isinstance(exponent, int) or exponent < 0:
            raise UsageError(f"exponent must be a non-negative integer, got {exponent!r}")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, PrimeFieldElem)):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_coefficient() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_coefficient())
            else:
                self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {dict(self.sorted_terms())!r})"

    # -- substitution -----------------------------------------------------

    def evaluate(self, point: Sequence[Any]) -> Any:
        if len(point) != self.nvars:
            raise UsageError(f"expected {self.nvars} values, got {len(point)}")
        total: Any = 0
        for mono, c in self.terms.items():
            value = c
            for v, e in zip(point, mono):
                if e:
                    value = value * v**e
            total = total + value
        return normalize_scalar(total)

    def substitute(self, values: Mapping[int, Any]) -> Polynomial:
        """Replace the variables in ``values`` by scalars; the space is unchanged."""
        out: dict[Monomial, Any] = {}
        for mono, c in self.terms.items():
            coeff = c
            exps = list(mono)
            for i, v in values.items():
                if exps[i]:
                    coeff = coeff * v ** exps[i]
                    exps[i] = 0
            key = tuple(exps)
            prev = out.get(key)
            out[key] = coeff if prev is None else prev + coeff
        return Polynomial(self.nvars, out)

    def compose(self, images: Sequence[Polynomial], nvars: int | None = None) -> Polynomial:
        """Substitute variable i by ``images[i]``; all images share one target space."""
        if len(images) != self.nvars:
            raise UsageError(f"expected {self.nvars} images, got {len(images)}")
        target = nvars if nvars is not None else (images[0].nvars if images else 0)
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            if (i, e) not in powers:
                powers[(i, e)] = images[i] ** e
            return powers[(i, e)]

        total = Polynomial(target)
        for mono, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(mono):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def embed(self, nvars: int, positions: Sequence[int]) -> Polynomial:
        """Move variable i to index ``positions[i]`` of a space with ``nvars`` variables."""
        if len(positions) != self.nvars:
            raise UsageError(f"expected {self.nvars} positions, got {len(positions)}")
        out: dict[Monomial, Any] = {}
        for mono, c in self.terms.items():
            exps = [0] * nvars
            for i, e in enumerate(mono):
                exps[positions[i]] += e
            out[tuple(exps)] = c
        return Polynomial(nvars, out)

    def restrict(self, indices: Sequence[int]) -> Polynomial:
        """Project onto the listed variables; every other variable must be absent."""
        keep = set(indices)
        out: dict[Monomial, Any] = {}
        for mono, c in self.terms.items():
            if any(e for i, e in enumerate(mono) if i not in keep):
                raise UsageError("polynomial involves a variable outside the projection")
            out[tuple(mono[i] for i in indices)] = c
        return Polynomial(len(indices), out)

    def coefficients_in(self, index: int) -> dict[int, Polynomial]:
        """Split by the power of one variable; coefficients drop that variable."""
        parts: dict[int, dict[Monomial, Any]] = {}
        for mono, c in self.terms.items():
            rest = mono[:index] + mono[index + 1 :]
            parts.setdefault(mono[index], {})[rest] = c
        return {e: Polynomial(self.nvars - 1, t) for e, t in parts.items()}

    def derivative(self, index: int) -> Polynomial:
        out: dict[Monomial, Any] = {}
        for mono, c in self.terms.items():
            e = mono[index]
            if e:
                out[mono[:index] + (e - 1,) + mono[index + 1 :]] = c * e
        return Polynomial(self.nvars, out)

    def map_coefficients(self, fn: Callable[[Any], Any]) -> Polynomial:
        return Polynomial(self.nvars, {m: fn(c) for m, c in self.terms.items()})

    # -- division ---------------------------------------------------------

    def exact_div(self, divisor: Any) -> Polynomial:
        """Quotient of an exact division; raises InexactDivisionError otherwise.

        Uses lexicographic leading terms: if the divisor divides self, the
        leading term of the divisor divides the leading term of every
        intermediate remainder.
        """
        if not isinstance(divisor, Polynomial):
            return self.map_coefficients(lambda c: coeff_exact_div(c, divisor))
        if divisor.nvars != self.nvars:
            raise UsageError("exact division across different variable spaces")
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.is_constant():
            return self.exact_div(divisor.constant_coefficient())
        lead = max(divisor.terms)
        lead_c = divisor.terms[lead]
        remainder = dict(self.terms)
        quotient: dict[Monomial, Any] = {}
        while remainder:
            mono = max(remainder)
            if not mono_divides(lead, mono):
                raise InexactDivisionError("divisor does not divide the polynomial")
            q_mono = mono_div(mono, lead)
            q_c = coeff_exact_div(remainder[mono], lead_c)
            quotient[q_mono] = q_c
            for m, c in divisor.terms.items():
                key = mono_mul(m, q_mono)
                v = remainder.get(key, 0) - c * q_c
                if v:
                    remainder[key] = v
                else:
                    remainder.pop(key, None)
        return Polynomial(self.nvars, quotient)

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            f = Fraction(c)
            num = math.gcd(num, f.numerator)
            den = math.lcm(den, f.denominator)
        return Fraction(num, den)

    def primitive(self) -> tuple[Fraction, Polynomial]:
        """Split into (content, primitive part with coprime integer coefficients)."""
        if not self.terms:
            return Fraction(0), self
        cont = self.content()
        return cont, self.map_coefficients(lambda c: Fraction(c) / cont)

    def leading_grlex(self) -> tuple[Monomial, Any]:
        if not self.terms:
            raise UsageError("zero polynomial has no leading term")
        mono = max(self.terms, key=grlex_key)
        return mono, self.terms[mono]


def sum_polynomials(nvars: int, polys: Iterable[Polynomial]) -> Polynomial:
    out: dict[Monomial, Any] = {}
    for p in polys:
        for mono, c in p.terms.items():
            v = out.get(mono)
            out[mono] = c if v is None else v + c
    return Polynomial(nvars, out)
