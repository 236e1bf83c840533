from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hnpkit.errors import BudgetExceeded, UsageError
from hnpkit.groebner import (
    Answer,
    MonomialOrder,
    buchberger,
    hn_decide,
    hnp_decide_elimination,
    ideal_membership_linear_algebra,
    is_reduced,
    normal_form,
    spolys_reduce_to_zero,
)
from hnpkit.polycore import GF, QQ, Polynomial, reduce_mod_p

y = Polynomial.variable(1, 0)


def polynomials(nvars: int = 2, max_exp: int = 2, max_terms: int = 3):
    monos = st.tuples(*[st.integers(0, max_exp)] * nvars)
    return st.dictionaries(monos, st.integers(-15, 15), min_size=1, max_size=max_terms).map(
        lambda terms: Polynomial(nvars, terms)
    )


def test_unit_ideal():
    G = buchberger([y + 1, y**2 + 1], MonomialOrder.grevlex(1))
    assert G.is_unit()
    assert G.generators == (Polynomial.constant(1, 1),)


def test_principal_ideal_is_its_own_basis():
    G = buchberger([2 * y**2 - 4], MonomialOrder.grevlex(1))
    assert G.generators == (y**2 - 2,)
    assert is_reduced(G)


def test_empty_and_zero_inputs_give_empty_basis():
    assert len(buchberger([], MonomialOrder.lex(2))) == 0
    assert len(buchberger([Polynomial.zero(2)], MonomialOrder.lex(2))) == 0


def test_generator_space_must_match_order():
    with pytest.raises(UsageError):
        buchberger([y], MonomialOrder.lex(2))


def test_normal_form_examples():
    G = buchberger([y**2 - 2], MonomialOrder.grevlex(1))
    assert normal_form(y**2, G) == 2
    assert normal_form(y**2 - 2, G) == 0
    f = y**5 + 3 * y
    once = normal_form(f, G)
    assert normal_form(once, G) == once


def test_elimination_order_puts_eliminated_block_first():
    order = MonomialOrder.eliminating(2, (1,))
    assert order.key((0, 1)) > order.key((5, 0))
    assert order.retained() == (0,)
    with pytest.raises(UsageError):
        MonomialOrder("lex", 2, permutation=(0, 0))


def test_hn_decide_over_rationals():
    assert hn_decide([y + 1, y**2 + 1]) is Answer.UNSAT
    assert hn_decide([y**2 - 2]) is Answer.SAT
    assert hn_decide([y**2 + 1]) is Answer.SAT
    assert hn_decide([]) is Answer.SAT
    assert hn_decide([Polynomial.constant(1, 3)]) is Answer.UNSAT


def test_hn_decide_over_prime_fields_looks_for_field_points():
    assert hn_decide([y**2 + 1], GF(5)) is Answer.SAT
    assert hn_decide([y**2 + 1], GF(7)) is Answer.UNSAT
    assert hn_decide([y**2 + 1], GF(2)) is Answer.SAT
    assert hn_decide([reduce_mod_p(Polynomial.constant(1, 2), 2)], GF(2)) is Answer.SAT


@settings(max_examples=200, deadline=None)
@given(st.lists(polynomials(), min_size=1, max_size=3), st.sampled_from([2, 3, 5]))
def test_prime_field_answer_matches_enumeration(polys, p):
    reduced = [reduce_mod_p(f, p) for f in polys]
    has_point = any(
        all(f.evaluate(list(point)) == 0 for f in reduced) for point in product(range(p), repeat=2)
    )
    expected = Answer.SAT if has_point else Answer.UNSAT
    assert hn_decide(reduced, GF(p)) is expected


def test_elimination_parametric_examples(system):
    assert hnp_decide_elimination(system("params x", "vars y", "eq x*y - 1")).answer is Answer.SAT
    assert hnp_decide_elimination(system("params x", "vars y", "eq y")).answer is Answer.SAT
    result = hnp_decide_elimination(system("params x", "vars y", "eq y - x", "eq y^2 - x"))
    assert result.answer is Answer.UNSAT
    assert result.witness == Polynomial(1, {(2,): 1, (1,): -1})
    assert not result.basis.generators[result.witness_index].involves(range(1, 2))


def test_elimination_unit_ideal_witness_is_one(system):
    result = hnp_decide_elimination(system("params x", "vars y", "eq x*y - 1", "eq y"))
    assert result.answer is Answer.UNSAT
    assert result.witness == 1


def test_corpus_labels_match_elimination(corpus):
    for entry in corpus.entries:
        result = hnp_decide_elimination(entry.load())
        assert result.answer is entry.label, entry.name
        assert spolys_reduce_to_zero(result.basis), entry.name


def test_cofactors_reproduce_the_basis(load_system):
    S = load_system("circle_three_lines").cleared()
    G = buchberger(S.joint(), MonomialOrder.grevlex(S.m + S.n), QQ, track_cofactors=True)
    assert len(G.cofactors) == len(G.generators)
    for g, row in zip(G.generators, G.cofactors):
        total = Polynomial.zero(g.nvars)
        for c, f in zip(row, G.inputs):
            total = total + c * f
        assert total == g


def test_budget_is_enforced(small_budget):
    x = [Polynomial.variable(4, i) for i in range(4)]
    cyclic = [
        x[0] + x[1] + x[2] + x[3],
        x[0] * x[1] + x[1] * x[2] + x[2] * x[3] + x[3] * x[0],
        x[0] * x[1] * x[2] + x[1] * x[2] * x[3] + x[2] * x[3] * x[0] + x[3] * x[0] * x[1],
        x[0] * x[1] * x[2] * x[3] - 1,
    ]
    with pytest.raises(BudgetExceeded) as info:
        buchberger(cyclic, MonomialOrder.grevlex(4), budget=small_budget)
    assert info.value.cap in {"max_basis_size", "max_terms", "max_reductions"}
    assert info.value.observed > info.value.limit


@settings(max_examples=200, deadline=None)
@given(st.lists(polynomials(max_exp=3), min_size=1, max_size=3))
def test_random_bases_satisfy_buchberger_criterion(gens):
    field = GF(31)
    for order in (MonomialOrder.grevlex(2), MonomialOrder.lex(2)):
        G = buchberger(gens, order, field)
        assert spolys_reduce_to_zero(G)
        assert all(normal_form(g, G) == 0 for g in gens)
        if len(G):
            assert is_reduced(G)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(polynomials(max_exp=2), min_size=1, max_size=2),
    polynomials(max_exp=1),
    polynomials(max_exp=2),
)
def test_membership_agrees_with_linear_algebra(gens, h, f):
    field = GF(31)
    assume(all(g.degree() <= 3 for g in gens))
    G = buchberger(gens, MonomialOrder.grevlex(2), field)
    member = h * gens[0]
    if member.degree() <= 4:
        assert ideal_membership_linear_algebra(member, gens, 4, field)
    assert normal_form(member, G) == 0
    if ideal_membership_linear_algebra(f, gens, 4, field):
        assert normal_form(f, G) == 0
