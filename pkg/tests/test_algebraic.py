from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnpkit.algebraic import (
    SolutionWitness,
    UnivarPoly,
    check_witness,
    discriminant,
    discriminant_denominator,
    integral_scaling_bound,
    make_integral,
    minpoly_sum,
    primitive_element,
    primitive_element_chain,
    primitive_element_system,
    specialize_witness,
    sylvester_resultant,
    univariate_gcd,
    witness_from_json,
    witness_to_json,
)
from hnpkit.errors import PreconditionError, UsageError
from hnpkit.polycore import Polynomial, RationalFunction

x = Polynomial.variable(1, 0)


def U(*coeffs):
    return UnivarPoly(list(coeffs))


int_univariates = st.lists(st.integers(-5, 5), min_size=2, max_size=4).filter(lambda c: c[-1] != 0).map(UnivarPoly)


def test_resultant_examples():
    assert sylvester_resultant(U(-2, 1), U(-3, 1)) == -1
    assert sylvester_resultant(U(-1, 0, 1), U(-1, 1)) == 0
    assert sylvester_resultant(U(-2, 0, 1), U(-3, 0, 1)) == 1


def test_resultant_of_zero_polynomial():
    with pytest.raises(UsageError):
        sylvester_resultant(U(), U(1, 1))


def test_discriminant_examples():
    assert discriminant(U(-2, 0, 1)) == 8
    assert discriminant(U(0, -1, 0, 1)) == 4
    assert discriminant(U(1, -2, 1)) == 0
    assert discriminant(U(3, 7)) == 1
    with pytest.raises(UsageError):
        discriminant(U(5))


def test_discriminant_with_parameter_coefficients():
    # y^2 - x has discriminant 4x
    assert discriminant(UnivarPoly([-x, Polynomial.zero(1), Polynomial.constant(1, 1)])) == 4 * x


@settings(max_examples=60, deadline=None)
@given(int_univariates, int_univariates, int_univariates)
def test_resultant_is_multiplicative(p1, p2, q):
    assert sylvester_resultant(p1 * p2, q) == sylvester_resultant(p1, q) * sylvester_resultant(p2, q)


@settings(max_examples=60, deadline=None)
@given(int_univariates, int_univariates)
def test_resultant_vanishes_iff_common_factor(p, q):
    res = sylvester_resultant(p, q)
    assert (res == 0) == (univariate_gcd(p, q).degree >= 1)
    sign = -1 if (p.degree * q.degree) % 2 else 1
    assert sylvester_resultant(q, p) == sign * res


one = Polynomial.constant(1, 1)


def over_x(c):
    """c / x as a ℚ(x) coefficient."""
    return RationalFunction(Polynomial.constant(1, c), x)


def test_resultant_with_quotient_coefficients():
    # Res(y - 1/x, y - 2) = 1/x - 2
    value = sylvester_resultant(UnivarPoly([over_x(-1), one]), UnivarPoly([-2 * one, one]))
    assert isinstance(value, RationalFunction)
    assert value == RationalFunction(one - 2 * x, x)


def test_resultant_collapses_to_a_polynomial_when_possible():
    value = sylvester_resultant(UnivarPoly([over_x(-1), one]), UnivarPoly([Polynomial.zero(1), x]))
    assert value == -1


def test_discriminant_with_quotient_coefficients():
    # y^2 - 1/x has discriminant 4/x
    value = discriminant(UnivarPoly([over_x(-1), Polynomial.zero(1), one]))
    assert value == RationalFunction(4 * one, x)


def test_minpoly_sum_clears_quotients():
    out = minpoly_sum(UnivarPoly([over_x(-1), Polynomial.zero(1), one]), UnivarPoly([-one, one]), 1)
    assert out == UnivarPoly([x - 1, -2 * x, x])


def test_minpoly_of_sum_of_square_roots():
    assert minpoly_sum(U(-2, 0, 1), U(-3, 0, 1), 1) == U(1, 0, -10, 0, 1)


def test_minpoly_with_rational_roots():
    assert minpoly_sum(U(-2, 1), U(-3, 1), 5) == U(-17, 1)


def test_minpoly_at_zero_shift_is_a_power():
    p = U(-2, 0, 1)
    assert minpoly_sum(p, U(-3, 0, 1), 0) == p**2


def test_minpoly_root_is_numerically_close():
    r = minpoly_sum(U(-2, 0, 1), U(-3, 0, 1), 1)
    theta = 2**0.5 + 3**0.5
    assert abs(float(r.evaluate(theta))) < 1e-9


def test_primitive_element_examples():
    pe = primitive_element(U(-2, 0, 1), U(-3, 0, 1))
    assert pe.c == 1
    assert pe.minpoly == U(1, 0, -10, 0, 1)
    assert pe.status == "primitive"
    assert pe.bound == 17

    pe = primitive_element(U(-5, 1), U(-2, 0, 1))
    assert pe.c == 1
    assert pe.minpoly == U(23, -10, 1)


def test_primitive_element_reports_degenerate_fields():
    pe = primitive_element(U(-2, 0, 1), U(-2, 0, 1))
    assert pe.status == "degenerate"
    assert pe.c == 2
    assert pe.minpoly.degree == 4


def test_primitive_element_needs_squarefree_inputs():
    with pytest.raises(PreconditionError):
        primitive_element(U(1, -2, 1), U(-2, 0, 1))
    with pytest.raises(UsageError):
        primitive_element(U(3), U(-2, 0, 1))


def test_primitive_chain():
    chain = primitive_element_chain([U(-2, 0, 1), U(-3, 0, 1)])
    assert chain.constants == (1, 1)
    assert chain.minpoly == U(1, 0, -10, 0, 1)
    assert chain.status == "primitive"
    assert len(chain.steps) == 1


def test_primitive_element_system_adds_linear_form(system):
    S = system("params", "vars y1 y2", "eq y1^2 - 2", "eq y2^2 - 3")
    ext = primitive_element_system(S, [1, 1])
    assert (ext.n, ext.k) == (3, 3)
    assert ext.var_names == ("y1", "y2", "theta")
    y1, y2, theta = (Polynomial.variable(3, i) for i in range(3))
    assert ext.polys[-1].poly == theta - y1 - y2
    with pytest.raises(UsageError):
        primitive_element_system(S, [1])


def test_make_integral_clears_a_parameter_denominator():
    f = UnivarPoly([RationalFunction(Polynomial.constant(1, -1), x), 1])
    g, d = make_integral(f, 1)
    assert d == x
    assert g == UnivarPoly([Polynomial.constant(1, -1), Polynomial.constant(1, 1)])
    assert integral_scaling_bound(d) == 1


def test_make_integral_rational_constants():
    g, d = make_integral(U(Fraction(1, 4), Fraction(-1, 2), 1), 0)
    assert d == 4
    assert g == U(4, -2, 1)
    assert g.is_monic()


def test_make_integral_is_identity_on_integral_input():
    g, d = make_integral(U(2, -3, 1), 0)
    assert d == 1
    assert g == U(2, -3, 1)


def test_make_integral_needs_monic_input():
    with pytest.raises(PreconditionError):
        make_integral(U(1, 2), 0)


def test_discriminant_denominator_is_a_parameter_polynomial():
    b = discriminant_denominator(U(-2, 0, 1), 0)
    assert b == 8
    assert b.nvars == 0


@pytest.fixture
def reciprocal(system):
    S = system("params x", "vars y", "eq x*y - 1")
    return S, SolutionWitness(U(-1, 1), (U(1),), x)


@pytest.fixture
def square_root(system):
    S = system("params x", "vars y", "eq y^2 - x")
    minpoly = UnivarPoly([-x, 0, 1])
    return S, SolutionWitness(minpoly, (UnivarPoly([0, 4 * x]),), 4 * x)


def test_witness_for_reciprocal(reciprocal):
    S, w = reciprocal
    assert check_witness(S, w)


def test_witness_for_square_root(square_root):
    S, w = square_root
    assert check_witness(S, w)


def test_wrong_witness_is_rejected(square_root):
    S, _ = square_root
    w = SolutionWitness(UnivarPoly([-x, 0, 1]), (U(0, 1),), Polynomial.constant(1, 2))
    assert not check_witness(S, w)


def test_witness_shape_errors(reciprocal):
    S, _ = reciprocal
    with pytest.raises(UsageError):
        SolutionWitness(U(-1, 1), (U(1),), Polynomial.zero(1))
    with pytest.raises(PreconditionError):
        SolutionWitness(U(-1, 2), (U(1),), x)
    with pytest.raises(UsageError):
        check_witness(S, SolutionWitness(U(-1, 1), (U(1), U(1)), x))


def test_specialize_where_denominator_survives(reciprocal):
    S, w = reciprocal
    special = specialize_witness(w, [2], S)
    assert special.b_value == 2
    assert special.b_nonzero
    assert special.minpoly == U(-1, 1)
    assert special.verified is True


def test_specialize_where_denominator_vanishes(reciprocal):
    S, w = reciprocal
    special = specialize_witness(w, [0], S)
    assert not special.b_nonzero
    assert special.verified is None


def test_specialize_square_root(square_root):
    S, w = square_root
    special = specialize_witness(w, [4], S)
    assert special.minpoly == U(-4, 0, 1)
    assert special.numerators == (U(0, 16),)
    assert special.b_value == 16
    assert special.verified is True
    with pytest.raises(UsageError):
        specialize_witness(w, [1, 2])


def test_witness_json_round_trip(square_root):
    S, w = square_root
    data = witness_to_json(w, S)
    assert data["variable"] == "theta"
    assert data["denominator"] == "4*x"
    assert witness_from_json(data, S) == w
    with pytest.raises(UsageError):
        witness_from_json({"minpoly": "theta"}, S)
