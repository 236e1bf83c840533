"""Primitive elements of ℚ(α, β) and the integral rescaling of monic polynomials."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Literal

from hnpkit.algebraic.resultants import as_polynomial, discriminant, sylvester_resultant
from hnpkit.algebraic.univariate import (
    UnivarPoly,
    clear_coefficient_denominators,
    has_fraction_coefficients,
    parameter_count,
)
from hnpkit.errors import DegenerateCaseError, PreconditionError, UsageError
from hnpkit.polycore.polynomial import Polynomial
from hnpkit.polycore.rational_function import as_fraction_parts, denominator_lcm
from hnpkit.polycore.sympy_bridge import is_irreducible_univariate
from hnpkit.polycore.system import PolynomialSystem
from hnpkit.utils.tracing import span

logger = logging.getLogger(__name__)

PrimitiveStatus = Literal["primitive", "degenerate"]


def minpoly_sum(p: UnivarPoly, q: UnivarPoly, c: int) -> UnivarPoly:
    """Res_z(p(y − c·z), q(z)) as a polynomial in y, made monic when its leading coefficient is a constant.

    Every α + c·β with p(α) = 0 and q(β) = 0 is a root. Coefficients may be
    scalars, ``Polynomial``s on the parameters or ℚ(x) quotients; quotients are
    cleared first, which leaves the roots unchanged.
    """
    if not p or not q:
        raise UsageError("minpoly_sum of a zero polynomial")
    m = parameter_count(p, q)
    if has_fraction_coefficients(p, q):
        p, _ = clear_coefficient_denominators(p, m)
        q, _ = clear_coefficient_denominators(q, m)
    width = (m or 0) + 1
    y_index = width - 1
    positions = list(range(width - 1))

    def lift(a: Any) -> Polynomial:
        if isinstance(a, Polynomial):
            return a.embed(width, positions)
        return Polynomial.constant(width, a)

    shift = UnivarPoly([Polynomial.variable(width, y_index), Polynomial.constant(width, -c)])
    shifted = p.map_coefficients(lift).compose(shift)
    res = as_polynomial(sylvester_resultant(shifted, q.map_coefficients(lift)), width)
    out = UnivarPoly.from_polynomial(res, y_index)
    if m is None:
        out = out.map_coefficients(lambda a: a.constant_coefficient())
    if not out:
        return out
    lead = out.lc
    if isinstance(lead, Polynomial):
        if not lead.is_constant():
            return out
        lead = lead.constant_coefficient()
    factor = Fraction(1) / Fraction(lead)
    return out.map_coefficients(lambda a: a * factor)


def _rational_monic(p: UnivarPoly, label: str) -> UnivarPoly:
    if not p or len(p) < 2:
        raise UsageError(f"{label} must have degree >= 1")
    if parameter_count(p) is not None:
        raise UsageError(f"{label} must have rational coefficients")
    return p.monic()


@dataclass(frozen=True)
class PrimitiveElement:
    """``c`` with θ = α + c·β; ``minpoly`` is the squarefree resolvent of degree deg p · deg q.

    With status "degenerate" the resolvent is reducible: θ still generates
    ℚ(α, β) but that field has degree below deg p · deg q, and the minimal
    polynomial of θ is a proper factor of ``minpoly``.
    """

    c: int
    minpoly: UnivarPoly
    status: PrimitiveStatus
    bound: int


def primitive_element(p: UnivarPoly, q: UnivarPoly) -> PrimitiveElement:
    """Least c in 1..ℓ²m²+1 whose resolvent is squarefree of full degree ℓ·m."""
    p = _rational_monic(p, "p")
    q = _rational_monic(q, "q")
    if discriminant(p) == 0 or discriminant(q) == 0:
        raise PreconditionError("p and q must be squarefree")
    ell, m = len(p) - 1, len(q) - 1
    bound = ell * ell * m * m + 1
    with span("algebraic.primitive_element", logger, deg_p=ell, deg_q=m, bound=bound) as attrs:
        for c in range(1, bound + 1):
            r = minpoly_sum(p, q, c)
            if len(r) - 1 != ell * m or discriminant(r) == 0:
                continue
            status: PrimitiveStatus = "primitive" if is_irreducible_univariate(list(r.coeffs)) else "degenerate"
            attrs.update(c=c, status=status)
            if status == "degenerate":
                logger.warning(f"resolvent at c = {c} is squarefree but reducible: extension degree < {ell * m}")
            return PrimitiveElement(c, r, status, bound)
    raise DegenerateCaseError("no separable candidate in bound")


@dataclass(frozen=True)
class ChainStep:
    index: int
    c: int
    bound: int
    status: PrimitiveStatus


@dataclass(frozen=True)
class PrimitiveChain:
    """θ = β₁ + c₂β₂ + … + c_rβ_r; ``constants[0]`` is always 1."""

    constants: tuple[int, ...]
    minpoly: UnivarPoly
    status: PrimitiveStatus
    steps: tuple[ChainStep, ...]


def primitive_element_chain(polys: Sequence[UnivarPoly]) -> PrimitiveChain:
    if not polys:
        raise UsageError("primitive_element_chain needs at least one polynomial")
    current = _rational_monic(polys[0], "p1")
    constants = [1]
    steps: list[ChainStep] = []
    for index, q in enumerate(polys[1:], start=2):
        step = primitive_element(current, q)
        steps.append(ChainStep(index, step.c, step.bound, step.status))
        constants.append(step.c)
        current = step.minpoly
        if step.status == "degenerate":
            return PrimitiveChain(tuple(constants), current, "degenerate", tuple(steps))
    return PrimitiveChain(tuple(constants), current, "primitive", tuple(steps))


def primitive_element_system(
    S: PolynomialSystem,
    constants: Sequence[int],
    d: Polynomial | int = 1,
    name: str = "theta",
) -> PolynomialSystem:
    """S extended by a fresh variable z and the polynomial z − Σ c_i·d·y_i."""
    if len(constants) != S.n:
        raise UsageError(f"expected {S.n} constants, got {len(constants)}")
    S = S.cleared()
    while name in S.names:
        name += "_"
    m, n = S.m, S.n + 1
    width = m + n
    d_joint = d.embed(width, list(range(m))) if isinstance(d, Polynomial) else Polynomial.constant(width, d)
    lifted = [f.poly.embed(width, list(range(width - 1))) for f in S.polys]
    linear = Polynomial.zero(width)
    for i, c in enumerate(constants):
        linear = linear + Polynomial.variable(width, m + i, c)
    extra = Polynomial.variable(width, width - 1) - d_joint * linear
    return PolynomialSystem.from_polynomials(lifted + [extra], m, n, S.param_names, S.var_names + (name,))


def make_integral(f: UnivarPoly, m: int) -> tuple[UnivarPoly, Polynomial]:
    """(g, d) with g(y) = d^N · f(y / d) monic over ℚ[x]; d is the lcm of the coefficient denominators."""
    if not f.is_monic():
        raise PreconditionError("make_integral needs a monic polynomial")
    int_lcm, poly_lcm = denominator_lcm(f.coeffs, m)
    d = poly_lcm.scale(int_lcm)
    N = len(f) - 1
    coeffs: list[Polynomial] = []
    for i, c in enumerate(f.coeffs):
        a, num, b, den = as_fraction_parts(c, m)
        coeffs.append((num * d ** (N - i)).scale(Fraction(a, b)).exact_div(den))
    return UnivarPoly(coeffs), d


def integral_scaling_bound(d: Polynomial) -> int:
    """deg_x of the scaling polynomial produced by ``make_integral``."""
    return max(int(d.degree()), 0) if d else 0


def discriminant_denominator(minpoly: UnivarPoly, m: int) -> Polynomial:
    """disc(m_θ) in ℚ[x]: every coordinate of a solution is P_i(θ)/disc(m_θ)."""
    return as_polynomial(discriminant(minpoly), m)
