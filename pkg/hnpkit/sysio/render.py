"""Canonical text form of polynomials and systems (graded lex, x block before y block)."""

from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from hnpkit.polycore.polynomial import Polynomial
from hnpkit.polycore.rational_function import RationalFunction
from hnpkit.polycore.system import ParamPolynomial, PolynomialSystem


def _monomial_text(mono: tuple[int, ...], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _coefficient_text(c: Any) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{abs(c.numerator)}/{c.denominator}"
    return str(abs(int(c)) if isinstance(c, (int, Fraction)) else c)


def _is_negative(c: Any) -> bool:
    return isinstance(c, (int, Fraction)) and c < 0


def render_polynomial(poly: Polynomial, names: Sequence[str]) -> str:
    """The zero polynomial renders as ``0``."""
    if not poly:
        return "0"
    pieces: list[str] = []
    for i, (mono, c) in enumerate(poly.sorted_terms()):
        mono_text = _monomial_text(mono, names)
        coeff = _coefficient_text(c)
        if not mono_text:
            body = coeff
        elif coeff == "1":
            body = mono_text
        else:
            body = f"{coeff}*{mono_text}"
        sign = "-" if _is_negative(c) else "+"
        if i == 0:
            pieces.append(f"-{body}" if sign == "-" else body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def render_coefficient(value: Any, names: Sequence[str]) -> str:
    """A scalar, a ℚ[x] polynomial or a ℚ(x) quotient written as ``(num)/(den)``."""
    if isinstance(value, RationalFunction):
        if value.is_polynomial():
            value = value.numerator.scale(Fraction(1) / Fraction(value.denominator.constant_coefficient()))
        else:
            return f"({render_polynomial(value.numerator, names)})/({render_polynomial(value.denominator, names)})"
    if not isinstance(value, Polynomial):
        value = Polynomial.constant(len(names), value)
    return render_polynomial(value, names)


def render_param(f: ParamPolynomial, names: Sequence[str]) -> str:
    text = render_polynomial(f.poly, names)
    if f.denominator is None or f.denominator.is_constant():
        return text
    return f"({text})/({render_polynomial(f.denominator, names)})"


def render_system(S: PolynomialSystem) -> str:
    names = S.names
    lines = [
        " ".join(["params", *S.param_names]),
        " ".join(["vars", *S.var_names]),
    ]
    lines.extend(f"eq {render_param(f, names)}" for f in S.polys)
    return "\n".join(lines) + "\n"
