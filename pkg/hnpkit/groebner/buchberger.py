"""Buchberger's algorithm with the normal selection strategy and cofactor tracking."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from hnpkit.errors import BudgetExceeded, UsageError
from hnpkit.groebner.orders import MonomialOrder
from hnpkit.polycore.fields import QQ, Field
from hnpkit.polycore.monomial import (
    Monomial,
    mono_coprime,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)
from hnpkit.polycore.polynomial import Polynomial
from hnpkit.utils.settings import Budget, default_budget
from hnpkit.utils.tracing import span

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced basis; ``cofactors[i][j]`` satisfies generators[i] = Σ_j cofactors[i][j]·inputs[j]."""

    generators: tuple[Polynomial, ...]
    order: MonomialOrder
    field: Field
    inputs: tuple[Polynomial, ...]
    cofactors: tuple[tuple[Polynomial, ...], ...] | None = None

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant() and bool(self.generators[0])

    def leading_monomials(self) -> list[Monomial]:
        return [max(g.terms, key=self.order.key) for g in self.generators]

    def __len__(self) -> int:
        return len(self.generators)


class _Meter:
    def __init__(self, budget: Budget) -> None:
        self.budget = budget
        self.reductions = 0

    def tick(self, nterms: int) -> None:
        self.reductions += 1
        if self.reductions > self.budget.max_reductions:
            raise BudgetExceeded("max_reductions", self.budget.max_reductions, self.reductions)
        if nterms > self.budget.max_terms:
            raise BudgetExceeded("max_terms", self.budget.max_terms, nterms)

    def check_basis(self, size: int) -> None:
        if size > self.budget.max_basis_size:
            raise BudgetExceeded("max_basis_size", self.budget.max_basis_size, size)


class _Element:
    __slots__ = ("terms", "cof", "lm", "lc")

    def __init__(self, terms: dict[Monomial, Any], cof: list[Polynomial] | None, order: MonomialOrder) -> None:
        self.terms = terms
        self.cof = cof
        self.lm = max(terms, key=order.key)
        self.lc = terms[self.lm]


class _UnitIdeal(Exception):
    def __init__(self, element: _Element) -> None:
        self.element = element


def _field_terms(poly: Polynomial, field: Field) -> dict[Monomial, Any]:
    return {m: field.convert(c) for m, c in poly.terms.items()}


def _reduce(
    terms: dict[Monomial, Any],
    cof: list[Polynomial] | None,
    basis: Sequence[_Element],
    order: MonomialOrder,
    meter: _Meter,
) -> tuple[dict[Monomial, Any], list[Polynomial] | None]:
    """Full reduction: the remainder has no term divisible by a leading monomial of basis."""
    p = dict(terms)
    cof = list(cof) if cof is not None else None
    rem: dict[Monomial, Any] = {}
    while p:
        lm = max(p, key=order.key)
        lc = p[lm]
        for g in basis:
            if not mono_divides(g.lm, lm):
                continue
            q_mono = mono_div(lm, g.lm)
            q_c = lc / g.lc
            for mono, c in g.terms.items():
                key = mono_mul(mono, q_mono)
                v = p.get(key, 0) - q_c * c
                if v:
                    p[key] = v
                else:
                    p.pop(key, None)
            if cof is not None and g.cof is not None:
                for j, gc in enumerate(g.cof):
                    if gc:
                        cof[j] = cof[j] - gc.mul_term(q_mono, q_c)
            meter.tick(len(p) + len(rem))
            break
        else:
            rem[lm] = lc
            del p[lm]
    return rem, cof


def _spoly(
    a: _Element, b: _Element, field: Field
) -> tuple[dict[Monomial, Any], list[Polynomial] | None]:
    lcm = mono_lcm(a.lm, b.lm)
    ma, mb = mono_div(lcm, a.lm), mono_div(lcm, b.lm)
    ca, cb = field.one / a.lc, field.one / b.lc
    terms = {mono_mul(m, ma): c * ca for m, c in a.terms.items()}
    for m, c in b.terms.items():
        key = mono_mul(m, mb)
        v = terms.get(key, 0) - c * cb
        if v:
            terms[key] = v
        else:
            terms.pop(key, None)
    cof = None
    if a.cof is not None and b.cof is not None:
        cof = [x.mul_term(ma, ca) - y.mul_term(mb, cb) for x, y in zip(a.cof, b.cof)]
    return terms, cof


def _monic(terms: dict[Monomial, Any], cof: list[Polynomial] | None, lc: Any, field: Field):
    inv = field.one / lc
    terms = {m: c * inv for m, c in terms.items()}
    if cof is not None:
        cof = [c.scale(inv) for c in cof]
    return terms, cof


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder,
    field: Field = QQ,
    track_cofactors: bool = False,
    budget: Budget | None = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Raises BudgetExceeded when a configured cap is hit; the caller decides
    what to do with the unfinished computation.
    """
    budget = budget or default_budget()
    nvars = order.nvars
    for g in gens:
        if g.nvars != nvars:
            raise UsageError(f"generator has {g.nvars} variables, order expects {nvars}")
    inputs = tuple(g.map_coefficients(field.convert) for g in gens)
    k = len(inputs)
    meter = _Meter(budget)
    basis: list[_Element] = []
    pairs: dict[tuple[int, int], Monomial] = {}

    def unit_cofactor(j: int) -> list[Polynomial]:
        return [Polynomial.constant(nvars, field.one if i == j else field.zero) for i in range(k)]

    def add(terms: dict[Monomial, Any], cof: list[Polynomial] | None) -> None:
        elem = _Element(terms, cof, order)
        if not any(elem.lm):
            raise _UnitIdeal(elem)
        idx = len(basis)
        basis.append(elem)
        meter.check_basis(len(basis))
        for i in range(idx):
            pairs[(i, idx)] = mono_lcm(basis[i].lm, elem.lm)

    def chain_criterion(i: int, j: int, lcm: Monomial) -> bool:
        for t, other in enumerate(basis):
            if t in (i, j) or not mono_divides(other.lm, lcm):
                continue
            if (min(i, t), max(i, t)) not in pairs and (min(j, t), max(j, t)) not in pairs:
                return True
        return False

    with span("groebner.buchberger", logger, kind=order.kind, inputs=k, nvars=nvars) as attrs:
        try:
            for j, g in enumerate(inputs):
                if g:
                    terms = _field_terms(g, field)
                    cof = unit_cofactor(j) if track_cofactors else None
                    lm = max(terms, key=order.key)
                    add(*_monic(terms, cof, terms[lm], field))
            while pairs:
                (i, j), lcm = min(
                    pairs.items(),
                    key=lambda item: (mono_degree(item[1]), order.key(item[1]), item[0]),
                )
                del pairs[(i, j)]
                a, b = basis[i], basis[j]
                if mono_coprime(a.lm, b.lm) or chain_criterion(i, j, lcm):
                    continue
                terms, cof = _spoly(a, b, field)
                rem, cof = _reduce(terms, cof, basis, order, meter)
                if rem:
                    lm = max(rem, key=order.key)
                    add(*_monic(rem, cof, rem[lm], field))
        except _UnitIdeal as unit:
            e = unit.element
            cof = [c.scale(field.one / e.lc) for c in e.cof] if e.cof is not None else None
            attrs.update(unit=True, reductions=meter.reductions)
            return GroebnerBasis(
                (Polynomial.constant(nvars, field.one),),
                order,
                field,
                inputs,
                (tuple(cof),) if cof is not None else None,
            )

        reduced = _interreduce(basis, order, field, meter)
        attrs.update(size=len(reduced), reductions=meter.reductions)

    generators = tuple(Polynomial(nvars, e.terms) for e in reduced)
    cofactors = None
    if track_cofactors:
        cofactors = tuple(tuple(e.cof) for e in reduced)
    return GroebnerBasis(generators, order, field, inputs, cofactors)


def _interreduce(basis: list[_Element], order: MonomialOrder, field: Field, meter: _Meter) -> list[_Element]:
    minimal: list[_Element] = []
    for idx, e in enumerate(basis):
        redundant = any(
            mono_divides(o.lm, e.lm) and (o.lm != e.lm or oidx < idx)
            for oidx, o in enumerate(basis)
            if oidx != idx
        )
        if not redundant:
            minimal.append(e)
    reduced: list[_Element] = []
    for e in minimal:
        others = [o for o in minimal if o is not e]
        head = {e.lm: e.lc}
        tail = {m: c for m, c in e.terms.items() if m != e.lm}
        rem, cof = _reduce(tail, e.cof, others, order, meter)
        rem.update(head)
        terms, cof = _monic(rem, cof, e.lc, field)
        reduced.append(_Element(terms, cof, order))
    reduced.sort(key=lambda e: order.key(e.lm))
    return reduced


def normal_form(f: Polynomial, G: GroebnerBasis, budget: Budget | None = None) -> Polynomial:
    """Remainder of f on division by G; f - normal_form(f, G) lies in the ideal."""
    if f.nvars != G.order.nvars:
        raise UsageError(f"polynomial has {f.nvars} variables, basis has {G.order.nvars}")
    meter = _Meter(budget or default_budget())
    basis = [_Element(_field_terms(g, G.field), None, G.order) for g in G.generators]
    rem, _ = _reduce(_field_terms(f, G.field), None, basis, G.order, meter)
    return Polynomial(f.nvars, rem)


def spolys_reduce_to_zero(G: GroebnerBasis, budget: Budget | None = None) -> bool:
    """Buchberger's criterion: every S-polynomial of G reduces to zero modulo G."""
    meter = _Meter(budget or default_budget())
    basis = [_Element(_field_terms(g, G.field), None, G.order) for g in G.generators]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            terms, _ = _spoly(basis[i], basis[j], G.field)
            rem, _ = _reduce(terms, None, basis, G.order, meter)
            if rem:
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    lms = G.leading_monomials()
    for i, g in enumerate(G.generators):
        if G.field.convert(g.terms[lms[i]]) != G.field.one:
            return False
        for j, lm in enumerate(lms):
            if i != j and any(mono_divides(lm, m) for m in g.terms):
                return False
    return True
