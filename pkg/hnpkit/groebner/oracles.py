"""Decision procedures built on the Gröbner engine."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

from hnpkit.errors import UsageError
from hnpkit.groebner.buchberger import GroebnerBasis, buchberger, normal_form
from hnpkit.groebner.orders import MonomialOrder
from hnpkit.polycore.fields import QQ, Field
from hnpkit.polycore.linalg import in_row_space, row_reduce
from hnpkit.polycore.monomial import mono_mul, monomials_up_to
from hnpkit.polycore.polynomial import Polynomial
from hnpkit.polycore.system import PolynomialSystem
from hnpkit.utils.settings import Budget
from hnpkit.utils.tracing import span

logger = logging.getLogger(__name__)


class Answer(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"


@dataclass(frozen=True)
class EliminationResult:
    answer: Answer
    witness: Polynomial | None
    basis: GroebnerBasis
    witness_index: int | None = None


def _field_equations(G: GroebnerBasis, budget: Budget | None) -> list[Polynomial]:
    """NF(y_i^p) - y_i for every variable, by square-and-multiply modulo G."""
    p = G.field.characteristic
    nvars = G.order.nvars
    one = Polynomial.constant(nvars, G.field.one)
    out = []
    for i in range(nvars):
        y = Polynomial.variable(nvars, i, G.field.one)
        base, acc, e = normal_form(y, G, budget), one, p
        while e:
            if e & 1:
                acc = normal_form(acc * base, G, budget)
            e >>= 1
            if e:
                base = normal_form(base * base, G, budget)
        relation = acc - y
        if relation:
            out.append(relation)
    return out


def hn_decide(polys: Sequence[Polynomial], field: Field = QQ, budget: Budget | None = None) -> Answer:
    """UNSAT iff the reduced basis is {1}.

    Over ℚ this is the weak Nullstellensatz (zeros in the algebraic closure).
    Over 𝔽_p the field equations y_i^p - y_i are adjoined, so SAT means a
    zero with every coordinate in 𝔽_p.
    """
    nonzero = [p for p in polys if p]
    if not nonzero:
        return Answer.SAT
    nvars = nonzero[0].nvars
    order = MonomialOrder.grevlex(nvars)
    G = buchberger(nonzero, order, field, budget=budget)
    if G.is_unit() or field.characteristic == 0:
        return Answer.UNSAT if G.is_unit() else Answer.SAT
    relations = _field_equations(G, budget)
    if relations:
        G = buchberger(list(G.generators) + relations, order, field, budget=budget)
    return Answer.UNSAT if G.is_unit() else Answer.SAT


def hnp_decide_elimination(
    S: PolynomialSystem,
    budget: Budget | None = None,
    track_cofactors: bool = False,
) -> EliminationResult:
    """Decide the parametric system by computing I ∩ ℚ[x] with an order eliminating y.

    The witness is the pure-parameter basis element with the smallest leading
    monomial, as a polynomial in the m parameters.
    """
    S = S.cleared()
    nvars = S.m + S.n
    order = MonomialOrder.eliminating(nvars, tuple(range(S.m, nvars)))
    with span("groebner.hnp_decide_elimination", logger, m=S.m, n=S.n, k=S.k) as attrs:
        G = buchberger(S.joint(), order, QQ, track_cofactors=track_cofactors, budget=budget)
        y_block = range(S.m, nvars)
        for idx, g in enumerate(G.generators):
            if not g.involves(y_block):
                witness = g.restrict(list(range(S.m)))
                attrs.update(answer="UNSAT", witness_terms=len(witness.terms))
                return EliminationResult(Answer.UNSAT, witness, G, idx)
        attrs.update(answer="SAT")
        return EliminationResult(Answer.SAT, None, G)


def ideal_membership_linear_algebra(
    f: Polynomial,
    gens: Sequence[Polynomial],
    degree: int,
    field: Field = QQ,
) -> bool:
    """True iff f = Σ h_i·g_i with every deg(h_i·g_i) <= degree.

    Brute force over the monomial multiples of the generators; it only sees
    representations within the degree bound.
    """
    nvars = f.nvars
    if any(g.nvars != nvars for g in gens):
        raise UsageError("generators and polynomial live in different spaces")
    if not f:
        return True
    columns: dict[tuple[int, ...], int] = {}

    def vector(poly_terms) -> dict[int, object]:
        vec = {}
        for mono, c in poly_terms:
            col = columns.setdefault(mono, len(columns))
            vec[col] = field.convert(c)
        return vec

    rows = []
    for g in gens:
        if not g:
            continue
        for u in monomials_up_to(nvars, degree - int(g.degree())):
            rows.append(vector((mono_mul(u, m), c) for m, c in g.terms.items()))
    pivots = row_reduce(rows)
    return in_row_space(vector(f.terms.items()), pivots)
