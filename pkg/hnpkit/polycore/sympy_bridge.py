"""Conversions between hnpkit polynomials and sympy ``Poly`` for gcd, lcm and irreducibility."""

from fractions import Fraction
from typing import Any

import sympy

from hnpkit.polycore.polynomial import Polynomial


def _gens(nvars: int) -> tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"v0:{nvars}")


def to_sympy(poly: Polynomial, domain: str = "QQ") -> sympy.Poly:
    gens = _gens(poly.nvars)
    data = {mono: sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for mono, c in poly.terms.items()}
    if not data:
        data = {(0,) * poly.nvars: sympy.Integer(0)}
    return sympy.Poly.from_dict(data, *gens, domain=domain)


def from_sympy(p: sympy.Poly, nvars: int) -> Polynomial:
    terms: dict[tuple[int, ...], Any] = {}
    for mono, c in p.as_dict().items():
        rc = sympy.Rational(c)
        terms[tuple(mono)] = Fraction(int(rc.p), int(rc.q))
    return Polynomial(nvars, terms)


def polynomial_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic-free gcd over ℚ, returned with coprime integer coefficients."""
    if a.nvars == 0:
        return Polynomial.constant(0, 1)
    g = from_sympy(sympy.gcd(to_sympy(a), to_sympy(b)), a.nvars)
    return g.primitive()[1] if g else g


def polynomial_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.nvars == 0:
        return Polynomial.constant(0, 1)
    g = from_sympy(sympy.lcm(to_sympy(a), to_sympy(b)), a.nvars)
    return g.primitive()[1]


def is_irreducible_univariate(coefficients: list[Any]) -> bool:
    """Irreducibility over ℚ of c0 + c1*t + ... given ascending rational coefficients."""
    t = sympy.Symbol("t")
    desc = [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(coefficients)]
    return bool(sympy.Poly(desc, t, domain="QQ").is_irreducible)
