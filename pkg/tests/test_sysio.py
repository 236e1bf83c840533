import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnpkit.errors import HnpError, ParseError
from hnpkit.polycore import Polynomial
from hnpkit.sysio import parse_polynomial, parse_system, render_polynomial, render_system, to_csv, to_json
from hnpkit.utils.typing import DecisionReport, PrimeRecord


def test_parse_parametric_system():
    S = parse_system("params x\nvars y\neq x*y - 1")
    assert (S.m, S.n, S.k) == (1, 1, 1)
    assert S.polys[0].poly == Polynomial(2, {(1, 1): 1, (0, 0): -1})


def test_parse_parameter_free_system():
    S = parse_system("params\nvars y\neq y^2 - 2")
    assert S.m == 0
    assert S.polys[0].poly == Polynomial(1, {(2,): 1, (0,): -2})


def test_missing_header_names_the_section():
    with pytest.raises(ParseError) as info:
        parse_system("eq y^(2)")
    assert "params" in info.value.message
    assert info.value.line == 1


def test_parenthesized_exponent():
    S = parse_system("params\nvars y\neq y^(3) + 1")
    assert S.polys[0].poly.degree() == 3


def test_undeclared_identifier_reports_position():
    with pytest.raises(ParseError) as info:
        parse_system("params x\nvars y\neq x*z")
    assert info.value.line == 3
    assert info.value.column == 6
    assert "undeclared" in info.value.message


@pytest.mark.parametrize(
    "text",
    [
        "params x\nvars y\neq y^x",
        "params x\nvars y\neq y^-1",
        "params x\nvars y\neq 1/y",
        "params x\nvars y\neq 1/(x - x)",
        "params x\nvars y\neq x y",
        "params x\nvars\neq x",
        "params x\nvars y",
        "params x x\nvars y\neq x",
        "params x\nvars y\neq (y + 1",
        "params x\nvars y\nfoo y",
    ],
)
def test_malformed_input_is_a_parse_error(text):
    with pytest.raises(ParseError):
        parse_system(text)


def test_non_ascii_input_is_rejected():
    with pytest.raises(ParseError):
        parse_system("params x\nvars y\neq y − 1".encode())


def test_comments_and_blank_lines_are_ignored():
    S = parse_system("# header\nparams x\n\nvars y  # one variable\neq y - x # trailing\n")
    assert S.k == 1


def test_rational_literals_and_parameter_denominators():
    S = parse_system("params x\nvars y\neq y/2 - 1/(x + 1)")
    cleared = S.cleared()
    # 2(x + 1) * (y/2 - 1/(x + 1)) = x*y + y - 2
    assert cleared.polys[0].poly == Polynomial(2, {(1, 1): 1, (0, 1): 1, (0, 0): -2})


def test_parse_polynomial_over_given_names():
    f = parse_polynomial("x1*y^2 - 3", ("x1",), ("y",))
    assert f.poly == Polynomial(2, {(1, 2): 1, (0, 0): -3})


def test_zero_polynomial_renders_as_zero():
    assert render_polynomial(Polynomial.zero(2), ("x", "y")) == "0"


def test_render_is_graded_lex_with_x_before_y():
    f = parse_polynomial("1 - y + x*y + y^2 - 2*x", ("x",), ("y",))
    assert render_polynomial(f.poly, ("x", "y")) == "x*y + y^2 - 2*x - y + 1"


def test_render_rational_coefficients():
    f = parse_polynomial("y/3 - 1/2", (), ("y",))
    assert render_polynomial(f.poly, ("y",)) == "1/3*y - 1/2"


def test_render_then_parse_round_trips_on_corpus(corpus):
    for entry in corpus.entries:
        S = entry.load()
        text = render_system(S)
        again = parse_system(text)
        assert again == S, entry.name
        assert render_system(again) == text


def test_render_is_deterministic(load_system):
    S = load_system("circle_three_lines")
    assert render_system(S) == render_system(load_system("circle_three_lines"))


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=80))
def test_parser_never_crashes_on_bytes(data):
    try:
        parse_system(data)
    except HnpError:
        pass


alphabet = st.sampled_from(list("xy12+-*/() \n") + ["params ", "vars ", "eq ", "params x\nvars y\neq "])


@settings(max_examples=300, deadline=None)
@given(st.lists(alphabet, max_size=30).map("".join))
def test_parser_never_crashes_on_grammar_fragments(text):
    try:
        parse_system(text)
    except HnpError:
        pass


def test_json_reports_have_sorted_keys():
    line = to_json(DecisionReport(instance="a", answer="SAT", oracle="groebner"))
    data = json.loads(line)
    assert list(data) == sorted(data)
    assert data["log_type"] == "decision"
    assert "elapsed_ms" in data and data["elapsed_ms"] is None


def test_csv_has_header_and_lowercase_booleans():
    rows = [PrimeRecord(p=2, sat=True), PrimeRecord(p=3, sat=None, budget_exceeded=True)]
    text = to_csv(rows, list(PrimeRecord.model_fields))
    lines = text.splitlines()
    assert lines[0] == "p,sat,budget_exceeded,divides_scaling"
    assert lines[1] == "2,true,false,"
    assert lines[2] == "3,,true,"
