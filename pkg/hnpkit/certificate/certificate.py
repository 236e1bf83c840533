"""Parametric Nullstellensatz certificates a(x) = Σ g_i·f_i."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from hnpkit.errors import BudgetExceeded, PreconditionError, UsageError
from hnpkit.groebner.oracles import Answer, hnp_decide_elimination
from hnpkit.polycore.linalg import kernel_vector, row_reduce
from hnpkit.polycore.monomial import mono_mul, monomials_up_to
from hnpkit.polycore.polynomial import Polynomial, sum_polynomials
from hnpkit.polycore.system import PolynomialSystem
from hnpkit.sysio.parser import parse_polynomial
from hnpkit.sysio.render import render_polynomial
from hnpkit.utils.settings import Budget, get_settings
from hnpkit.utils.tracing import span
from hnpkit.utils.typing import CertificateReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NullstellensatzCertificate:
    """``a`` lives on the m parameters, each cofactor on the joint (x, y) space.

    ``scaling`` is the positive integer that cleared the rational
    denominators of the computation the certificate came from.
    """

    a: Polynomial
    cofactors: tuple[Polynomial, ...]
    scaling: int = 1

    @property
    def k(self) -> int:
        return len(self.cofactors)


def _check_dimensions(S: PolynomialSystem, cert: NullstellensatzCertificate) -> None:
    if cert.k != S.k:
        raise UsageError(f"certificate has {cert.k} cofactors, system has {S.k} polynomials")
    if cert.a.nvars != S.m:
        raise UsageError(f"a has {cert.a.nvars} variables, system has m = {S.m}")
    for g in cert.cofactors:
        if g.nvars != S.m + S.n:
            raise UsageError(f"cofactor has {g.nvars} variables, expected m + n = {S.m + S.n}")


def _embed_a(a: Polynomial, S: PolynomialSystem) -> Polynomial:
    return a.embed(S.m + S.n, list(range(S.m)))


def _max_degree(values: Sequence[int | float]) -> int:
    finite = [int(v) for v in values if v != float("-inf")]
    return max(finite, default=0)


def degree_profile(S: PolynomialSystem, cert: NullstellensatzCertificate) -> list[tuple[int, int]]:
    """Per polynomial (deg_y(g_i·f_i), deg_x(g_i·f_i)); zero products report (0, 0)."""
    _check_dimensions(S, cert)
    S = S.cleared()
    x_block, y_block = range(S.m), range(S.m, S.m + S.n)
    out = []
    for g, f in zip(cert.cofactors, S.polys):
        product = g * f.poly
        out.append((_max_degree([product.degree_in(y_block)]), _max_degree([product.degree_in(x_block)])))
    return out


def verify_certificate(S: PolynomialSystem, cert: NullstellensatzCertificate) -> CertificateReport:
    """Check a = Σ g_i·f_i exactly and compare degrees with 2^k and k·2^k.

    The degree comparison is only meaningful for normalized systems.
    """
    _check_dimensions(S, cert)
    S = S.cleared()
    nvars = S.m + S.n
    total = sum_polynomials(nvars, (g * f.poly for g, f in zip(cert.cofactors, S.polys)))
    valid = bool(cert.a) and total == _embed_a(cert.a, S)
    profile = degree_profile(S, cert)
    deg_y = _max_degree([d for d, _ in profile])
    deg_x = max(_max_degree([d for _, d in profile]), _max_degree([cert.a.degree()]))
    bound_y = 2**S.k
    bound_x = S.k * bound_y
    if not valid:
        logger.warning(f"certificate identity fails (a is {'zero' if not cert.a else 'nonzero'})")
    return CertificateReport(
        valid=valid,
        deg_y_max=deg_y,
        deg_x_max=deg_x,
        bound_y=str(bound_y),
        bound_x=str(bound_x),
        within_bounds=deg_y <= bound_y and deg_x <= bound_x,
        k=S.k,
    )


def _integral_certificate(
    a: Polynomial, cofactors: Sequence[Polynomial], S: PolynomialSystem
) -> NullstellensatzCertificate:
    """Clear rational denominators, divide out the integer content and make a positive."""
    coefficients = [Fraction(c) for p in (a, *cofactors) for c in p.coefficients()]
    scaling = math.lcm(*(c.denominator for c in coefficients)) if coefficients else 1
    content = math.gcd(*(int(c * scaling) for c in coefficients)) if coefficients else 1
    factor = Fraction(scaling, content or 1)
    a = a.scale(factor)
    cofactors = [g.scale(factor) for g in cofactors]
    _, lead = a.leading_grlex()
    if lead < 0:
        a, cofactors = -a, [-g for g in cofactors]
    return NullstellensatzCertificate(a, tuple(cofactors), scaling)


def find_certificate(S: PolynomialSystem, budget: Budget | None = None) -> NullstellensatzCertificate:
    """Certificate from the cofactor-tracked elimination basis."""
    S = S.cleared()
    with span("certificate.find_certificate", logger, m=S.m, n=S.n, k=S.k) as attrs:
        result = hnp_decide_elimination(S, budget=budget, track_cofactors=True)
        if result.answer is Answer.SAT:
            raise PreconditionError("the system is satisfiable over the closure of Q(x); no certificate exists")
        cofactors = result.basis.cofactors[result.witness_index]
        cert = _integral_certificate(result.witness, cofactors, S)
        report = verify_certificate(S, cert)
        if not report.valid:
            raise RuntimeError("cofactor identity does not hold for the extracted certificate")
        attrs.update(deg_a=cert.a.degree(), scaling=str(cert.scaling))
    return cert


def bounded_degree_search(
    S: PolynomialSystem,
    d_y: int,
    d_x: int,
    max_monomials: int | None = None,
) -> NullstellensatzCertificate | None:
    """Linear-algebra search for a certificate with deg_y(g_i·f_i) <= d_y and deg_x(g_i) <= d_x.

    Unknowns are the coefficients of every g_i and of a (supported on
    x-monomials of degree <= d_x); columns of a come last so a kernel vector
    with a nonzero a-part is found whenever one exists.
    """
    S = S.cleared()
    cap = max_monomials if max_monomials is not None else get_settings().max_monomials
    m, n = S.m, S.n
    nvars = m + n
    x_monos = list(monomials_up_to(m, d_x))

    unknowns: list[tuple[int, tuple[int, ...]]] = []
    for i, f in enumerate(S.polys):
        if not f.poly:
            continue
        room = d_y - int(f.deg_y())
        for y_mono in monomials_up_to(n, room):
            for x_mono in x_monos:
                unknowns.append((i, x_mono + y_mono))
    a_start = len(unknowns)
    ncols = a_start + len(x_monos)
    if ncols > cap:
        raise BudgetExceeded("max_monomials", cap, ncols)

    with span("certificate.bounded_degree_search", logger, d_y=d_y, d_x=d_x, columns=ncols) as attrs:
        rows: dict[tuple[int, ...], dict[int, Any]] = {}
        for col, (i, u) in enumerate(unknowns):
            for mono, c in S.polys[i].poly.terms.items():
                row = rows.setdefault(mono_mul(u, mono), {})
                row[col] = row.get(col, 0) + c
        zeros_y = (0,) * n
        for offset, x_mono in enumerate(x_monos):
            row = rows.setdefault(x_mono + zeros_y, {})
            row[a_start + offset] = row.get(a_start + offset, 0) - 1
        pivots = row_reduce({c: Fraction(v) for c, v in row.items() if v} for row in rows.values())
        vec = kernel_vector(pivots, ncols, lambda col: col >= a_start)
        attrs.update(rows=len(rows), rank=len(pivots), found=vec is not None)
    if vec is None:
        return None

    g_terms: list[dict[tuple[int, ...], Fraction]] = [{} for _ in S.polys]
    for col, (i, u) in enumerate(unknowns):
        if col in vec:
            g_terms[i][u] = Fraction(vec[col])
    a_terms = {x_monos[col - a_start]: Fraction(v) for col, v in vec.items() if col >= a_start}
    cert = _integral_certificate(
        Polynomial(m, a_terms),
        [Polynomial(nvars, t) for t in g_terms],
        S,
    )
    return cert


def certificate_to_json(cert: NullstellensatzCertificate, S: PolynomialSystem) -> dict[str, Any]:
    return {
        "a": render_polynomial(cert.a, S.param_names),
        "g": [render_polynomial(g, S.names) for g in cert.cofactors],
        "scaling": str(cert.scaling),
    }


def certificate_from_json(data: dict[str, Any], S: PolynomialSystem) -> NullstellensatzCertificate:
    try:
        a_text, g_texts = data["a"], data["g"]
        scaling = int(data.get("scaling", "1"))
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"certificate JSON must carry 'a', 'g' and 'scaling': {e}") from e
    if not isinstance(g_texts, list):
        raise UsageError("certificate field 'g' must be a list of polynomials")
    a = parse_polynomial(a_text, S.param_names, ())
    cofactors = tuple(parse_polynomial(t, S.param_names, S.var_names).poly for t in g_texts)
    return NullstellensatzCertificate(a.poly, cofactors, scaling)
