"""Solution witnesses (m_θ, P_1..P_n, b): y_i = P_i(θ)/b with m_θ(θ) = 0."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from hnpkit.algebraic.univariate import UnivarPoly
from hnpkit.errors import PreconditionError, UsageError
from hnpkit.polycore.polynomial import Polynomial
from hnpkit.polycore.system import PolynomialSystem
from hnpkit.sysio.parser import parse_polynomial
from hnpkit.sysio.render import render_polynomial

logger = logging.getLogger(__name__)


def _coerce(p: UnivarPoly, m: int) -> UnivarPoly:
    return p.map_coefficients(lambda c: c if isinstance(c, Polynomial) else Polynomial.constant(m, c))


@dataclass(frozen=True)
class SolutionWitness:
    """All coefficients are ``Polynomial``s on the m parameters."""

    minpoly: UnivarPoly
    numerators: tuple[UnivarPoly, ...]
    denominator: Polynomial
    variable: str = "theta"

    def __post_init__(self) -> None:
        if not self.denominator:
            raise UsageError("witness denominator b must be nonzero")
        if not self.minpoly.is_monic():
            raise PreconditionError("witness minimal polynomial must be monic in y")
        m = self.m
        object.__setattr__(self, "minpoly", _coerce(self.minpoly, m))
        object.__setattr__(self, "numerators", tuple(_coerce(p, m) for p in self.numerators))

    @property
    def m(self) -> int:
        return self.denominator.nvars


def _substituted(f: Polynomial, m: int, numerators: Sequence[UnivarPoly], b: Polynomial) -> UnivarPoly:
    """b^max(2, deg_y f) · f(x, P_1/b, ..., P_n/b) as a polynomial in θ over ℚ[x]."""
    top = max(2, int(f.degree_in(range(m, f.nvars))) if f else 0)
    b_powers = [Polynomial.constant(m, 1)]
    for _ in range(top):
        b_powers.append(b_powers[-1] * b)
    total = UnivarPoly([])
    for mono, c in f.terms.items():
        x_mono, y_mono = mono[:m], mono[m:]
        term = UnivarPoly([Polynomial(m, {x_mono: c}) * b_powers[top - sum(y_mono)]])
        for P, e in zip(numerators, y_mono):
            if e:
                term = term * P**e
        total = total + term
    return total


def check_witness(S: PolynomialSystem, w: SolutionWitness) -> bool:
    """True when every g_i = b^D · f_i(x, P/b) is divisible by m_θ in ℚ(x)[y]."""
    if len(w.numerators) != S.n:
        raise UsageError(f"witness has {len(w.numerators)} numerators, system has n = {S.n}")
    if w.m != S.m:
        raise UsageError(f"witness lives on {w.m} parameters, system has m = {S.m}")
    S = S.cleared()
    for i, f in enumerate(S.polys):
        g = _substituted(f.poly, S.m, w.numerators, w.denominator)
        if g.rem_monic(w.minpoly):
            logger.debug(f"witness fails on polynomial {i}")
            return False
    return True


@dataclass(frozen=True)
class WitnessSpecialization:
    """``verified`` is None when b(α) = 0 since nothing is then claimed."""

    alpha: tuple[int, ...]
    b_value: Any
    b_nonzero: bool
    minpoly: UnivarPoly
    numerators: tuple[UnivarPoly, ...]
    verified: bool | None


def specialize_witness(
    w: SolutionWitness, alpha: Sequence[int], S: PolynomialSystem | None = None
) -> WitnessSpecialization:
    """Evaluate the witness at α; with S given, check that P(ω)/b(α) solves S_α modulo m(α, ω)."""
    if len(alpha) != w.m:
        raise UsageError(f"alpha has length {len(alpha)}, expected m = {w.m}")
    point = list(alpha)
    b_value = w.denominator.evaluate(point)
    minpoly = w.minpoly.map_coefficients(lambda c: c.evaluate(point))
    numerators = tuple(P.map_coefficients(lambda c: c.evaluate(point)) for P in w.numerators)
    verified: bool | None = None
    if b_value and S is not None:
        if not check_witness(S, w):
            raise PreconditionError("cannot specialize an invalid witness")
        zero_params = Polynomial.constant(0, b_value)
        lifted = tuple(_coerce(P, 0) for P in numerators)
        verified = True
        for f in S.cleared().polys:
            specialized = f.poly.substitute(dict(enumerate(point))).restrict(list(f.y_indices))
            g = _substituted(specialized, 0, lifted, zero_params)
            if g.rem_monic(_coerce(minpoly, 0)):
                verified = False
                break
    return WitnessSpecialization(tuple(alpha), b_value, bool(b_value), minpoly, numerators, verified)


def witness_to_json(w: SolutionWitness, S: PolynomialSystem) -> dict[str, Any]:
    names = S.param_names + (w.variable,)

    def text(p: UnivarPoly) -> str:
        return render_polynomial(p.to_polynomial(S.m + 1, S.m, range(S.m)), names)

    return {
        "variable": w.variable,
        "minpoly": text(w.minpoly),
        "numerators": [text(P) for P in w.numerators],
        "denominator": render_polynomial(w.denominator, S.param_names),
    }


def witness_from_json(data: dict[str, Any], S: PolynomialSystem) -> SolutionWitness:
    try:
        variable = str(data.get("variable", "theta"))
        minpoly_text, numerator_texts, b_text = data["minpoly"], data["numerators"], data["denominator"]
    except (KeyError, TypeError, AttributeError) as e:
        raise UsageError(f"witness JSON must carry 'minpoly', 'numerators' and 'denominator': {e}") from e
    if not isinstance(numerator_texts, list):
        raise UsageError("witness field 'numerators' must be a list of polynomials")

    def univariate(text: str) -> UnivarPoly:
        parsed = parse_polynomial(text, S.param_names, (variable,))
        if parsed.denominator is not None and not parsed.denominator.is_constant():
            raise UsageError("witness polynomials must have polynomial coefficients")
        poly = parsed.poly
        if parsed.denominator is not None:
            poly = poly.scale(Fraction(1) / Fraction(parsed.denominator.constant_coefficient()))
        return UnivarPoly.from_polynomial(poly, S.m)

    b = parse_polynomial(b_text, S.param_names, ()).poly
    return SolutionWitness(
        univariate(minpoly_text),
        tuple(univariate(t) for t in numerator_texts),
        b,
        variable,
    )
