import pytest

from hnpkit.errors import UsageError
from hnpkit.groebner import hnp_decide_elimination
from hnpkit.normalize import (
    bit_size,
    denormalize_solution,
    expand_definitions,
    is_normalized,
    normalize_system,
    size_measure,
)


def assert_normal_form(S):
    for f in S.polys:
        assert f.poly.degree() <= 2
        assert all(c in (1, -1) for c in f.poly.coefficients())


def test_iterated_squaring_of_fifth_power(system):
    S = system("params", "vars y", "eq y^5 - 1")
    S_norm, nmap = normalize_system(S)
    assert_normal_form(S_norm)
    # y^5 = (y^2)^2 * y: two squaring variables and the rewritten original
    assert [v.kind for v in nmap.introduced] == ["power", "power"]
    assert (S_norm.m, S_norm.n, S_norm.k) == (0, 3, 3)
    assert size_measure(S_norm) == 3
    assert S_norm.var_names == ("y", "t_1", "t_2")


def test_expanding_definitions_recovers_the_original(system):
    S = system("params x", "vars y", "eq 3*y - x", "eq y^5 - x^3*y")
    S_norm, nmap = normalize_system(S)
    assert_normal_form(S_norm)
    expanded = expand_definitions(S_norm, nmap)
    assert expanded[: S.k] == S.joint()
    assert all(not g for g in expanded[S.k :])


def test_constants_are_built_by_doubling(system):
    S = system("params x", "vars y", "eq 3*y - x")
    S_norm, nmap = normalize_system(S)
    kinds = [v.kind for v in nmap.introduced]
    assert kinds == ["copy", "double"]
    assert S_norm.k == 3


def test_normalized_input_is_a_fixed_point(system):
    S = system("params x", "vars y1 y2", "eq y1*y2 - x", "eq y1 + 1")
    S_norm, nmap = normalize_system(S)
    assert nmap.is_empty
    assert S_norm == S


def test_parameter_count_is_unchanged(load_system):
    S = load_system("normalize_heavy")
    S_norm, nmap = normalize_system(S)
    assert S_norm.m == S.m
    assert nmap.original == (S.m, S.n, S.k)
    assert nmap.normalized == (S_norm.m, S_norm.n, S_norm.k)
    assert all(v.index >= S.m + S.n for v in nmap.introduced)


def test_subexpressions_are_shared(system):
    S = system("params", "vars y", "eq y^4 - 1", "eq y^4 + y")
    _, nmap = normalize_system(S)
    assert len(nmap.introduced) == 2


def test_large_constants_stay_polynomial_in_the_bit_size(system):
    S = system("params x", "vars y", "eq 1000001*y^7 - 99*x^3 + 12345")
    S_norm, _ = normalize_system(S)
    assert_normal_form(S_norm)
    assert S_norm.k <= S.k + 4 * bit_size(S)


def test_denormalize_projects_onto_original_variables(system):
    S = system("params", "vars y", "eq y^5 - 1")
    _, nmap = normalize_system(S)
    assert denormalize_solution(nmap, [1, 1, 1]) == [1]
    with pytest.raises(UsageError):
        denormalize_solution(nmap, [1])


def test_map_serializes_sizes(system):
    S = system("params", "vars y", "eq 8*y^5 - 1")
    _, nmap = normalize_system(S)
    data = nmap.as_dict()
    assert data["original"] == {"m": 0, "n": 1, "k": 1}
    assert data["sizes"]["original_raw"] == 4
    assert data["sizes"]["normalized"] == nmap.normalized_size
    assert {entry["kind"] for entry in data["introduced"]} >= {"power", "copy", "double"}


def test_rational_input_is_cleared_first(system):
    S = system("params x", "vars y", "eq y/2 - 1/(x + 1)")
    S_norm, _ = normalize_system(S)
    assert is_normalized(S_norm)


@pytest.mark.slow
def test_corpus_normalization_keeps_the_answer(corpus):
    for entry in corpus.entries:
        S = entry.load().cleared()
        S_norm, _ = normalize_system(S)
        assert is_normalized(S_norm), entry.name
        before = hnp_decide_elimination(S).answer
        after = hnp_decide_elimination(S_norm).answer
        assert before is after, entry.name
