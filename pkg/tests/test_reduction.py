import json
import random
from collections import Counter
from fractions import Fraction
from pathlib import Path

import anyio
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from hnpkit.errors import UsageError
from hnpkit.groebner import hnp_decide_elimination
from hnpkit.modp import PrimeSamplerConfig
from hnpkit.polycore import Polynomial
from hnpkit.reduction import (
    DEFAULT_D,
    ReductionConfig,
    compute_D,
    equisat_experiment,
    error_budget,
    hnp_decide_randomized,
    hnp_decide_randomized_async,
    identity_lemma_check,
    growth_exponent,
    sample_alpha,
    trial_rng,
    uniform_below,
)

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture
def line_and_parabola(system):
    return system("params x", "vars y", "eq y - x", "eq y^2 - x")


@pytest.fixture
def reciprocal(system):
    return system("params x", "vars y", "eq x*y - 1")


@pytest.fixture
def contradiction(system):
    return system("params", "vars y", "eq y", "eq y + 1")


def test_compute_D_examples():
    assert compute_D(2, 1) == 12
    assert compute_D(1, 7) == 3
    assert compute_D(4, 1) == 768
    assert growth_exponent(4, 2) == 64


def test_compute_D_rejects_bad_arguments():
    with pytest.raises(UsageError):
        compute_D(0, 1)
    with pytest.raises(UsageError):
        growth_exponent(3, 0)


def test_sample_alpha_with_singleton_range():
    assert sample_alpha(3, 1, random.Random(0)) == [1, 1, 1]
    assert sample_alpha(0, 10, random.Random(0)) == []
    with pytest.raises(UsageError):
        sample_alpha(1, 0, random.Random(0))


def test_sample_alpha_is_uniform():
    rng = random.Random(11)
    counts = Counter(sample_alpha(1, 6, rng)[0] for _ in range(60_000))
    assert set(counts) == set(range(1, 7))
    for value in range(1, 7):
        assert abs(counts[value] / 60_000 - 1 / 6) < 0.01


def test_sampling_is_deterministic_per_seed_and_trial():
    assert sample_alpha(4, 10**30, trial_rng(9, 3)) == sample_alpha(4, 10**30, trial_rng(9, 3))
    assert sample_alpha(4, 10**30, trial_rng(9, 3)) != sample_alpha(4, 10**30, trial_rng(9, 4))


def test_uniform_below_covers_wide_ranges():
    bound = 3 * 2**200
    values = [uniform_below(bound, trial_rng(1, i)) for i in range(50)]
    assert all(0 <= v < bound for v in values)
    assert max(values) > 2**190


def test_config_defaults_and_resolution():
    cfg = ReductionConfig()
    assert cfg.trials == 5
    assert cfg.amplification == 4
    assert cfg.oracle == "groebner"
    assert cfg.resolve_D(3) == DEFAULT_D == 10**6
    assert ReductionConfig(growth_c=1).resolve_D(2) == 12
    assert ReductionConfig(D=77).resolve_D(2) == 77


@pytest.mark.parametrize(
    "kwargs",
    [
        {"D": 5, "growth_c": 1},
        {"D": 0},
        {"growth_c": 0},
        {"trials": 0},
        {"seed": 2**64},
        {"seed": -1},
        {"oracle": "oracle"},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValidationError):
        ReductionConfig(**kwargs)


def test_randomized_unsat(line_and_parabola):
    transcript = hnp_decide_randomized(line_and_parabola, ReductionConfig(D=10**6, trials=5, seed=7))
    assert transcript.answer == "UNSAT"
    assert transcript.votes_unsat == 5
    assert [t.index for t in transcript.trials] == list(range(5))
    assert all(1 <= int(t.alpha[0]) <= 10**6 for t in transcript.trials)
    assert transcript.D == "1000000"


def test_randomized_sat(reciprocal):
    transcript = hnp_decide_randomized(reciprocal, ReductionConfig(D=10**6, trials=5, seed=7))
    assert transcript.answer == "SAT"
    assert transcript.votes_sat == 5


def test_randomized_parameter_free(contradiction):
    transcript = hnp_decide_randomized(contradiction, ReductionConfig(D=3, trials=4))
    assert transcript.answer == "UNSAT"
    assert all(t.alpha == [] for t in transcript.trials)


def test_growth_constant_sets_D(line_and_parabola):
    transcript = hnp_decide_randomized(line_and_parabola, ReductionConfig(growth_c=1, trials=3))
    assert transcript.D == str(compute_D(line_and_parabola.s, 1))


def test_transcripts_are_reproducible(line_and_parabola):
    cfg = ReductionConfig(D=1000, trials=4, seed=123)
    first = hnp_decide_randomized(line_and_parabola, cfg, instance="lp")
    second = hnp_decide_randomized(line_and_parabola, cfg, instance="lp")
    threaded = anyio.run(hnp_decide_randomized_async, line_and_parabola, cfg, None, "lp")
    assert first.model_dump() == second.model_dump() == threaded.model_dump()


def test_prime_oracle_with_amplification(reciprocal, contradiction):
    cfg = ReductionConfig(D=1000, trials=2, amplification=2, oracle="modp", modp=PrimeSamplerConfig(lo=2, hi=60))
    sat = hnp_decide_randomized(reciprocal, cfg)
    assert sat.answer == "SAT"
    assert all(len(t.modp_densities) == 2 for t in sat.trials)
    assert hnp_decide_randomized(contradiction, cfg).answer == "UNSAT"


def test_all_trials_over_budget(system, small_budget):
    S = system("params x", "vars y1 y2 y3 y4", "eq y1 - x", "eq y2 - x", "eq y3 - x", "eq y4 - x")
    transcript = hnp_decide_randomized(S, ReductionConfig(D=10, trials=3), budget=small_budget)
    assert transcript.answer == "BUDGET_EXCEEDED"
    assert all(t.excluded and t.budget_exceeded for t in transcript.trials)


def test_equisat_exhaustive_unsat(line_and_parabola):
    report = equisat_experiment(line_and_parabola, 50, mode="exhaustive")
    assert report.truth == "UNSAT"
    assert report.trials == 50
    assert report.empirical_sat_fraction == "1/50"
    assert report.exact_bound == "1/25"
    assert report.generic_bound == str(Fraction(2 * 4, 50))
    assert report.respects_bound is True
    assert report.one_sided is True


UNSAT_CORPUS = sorted(
    name for name, info in json.loads((CORPUS_DIR / "labels.json").read_text()).items() if info["label"] == "UNSAT"
)


@pytest.mark.slow
@pytest.mark.parametrize("name", UNSAT_CORPUS)
def test_equisat_exhaustive_over_unsat_corpus(name, load_system):
    S = load_system(name)
    a = hnp_decide_elimination(S.cleared()).witness
    report = equisat_experiment(S, 50, mode="exhaustive", instance=name)
    assert report.truth == "UNSAT"
    assert report.trials == 50**S.m
    assert Fraction(report.empirical_sat_fraction) <= Fraction(max(int(a.degree()), 0), 50)
    assert report.respects_bound is True
    assert report.one_sided is True


def test_equisat_exhaustive_sat(reciprocal):
    report = equisat_experiment(reciprocal, 50, mode="exhaustive")
    assert report.truth == "SAT"
    assert report.empirical_sat_fraction == "1"
    assert report.exact_bound is None
    assert report.respects_bound is None


def test_equisat_sat_with_growth_constant(reciprocal):
    report = equisat_experiment(reciprocal, 200, trials=20, seed=3, growth_c=1)
    assert report.sat_lower_bound is not None
    assert report.respects_bound is True


def test_equisat_contradiction(contradiction):
    report = equisat_experiment(contradiction, 5, trials=10)
    assert report.empirical_sat_fraction == "0"
    assert report.sat_count == 0


def test_equisat_sampled_needs_trials(reciprocal):
    with pytest.raises(UsageError):
        equisat_experiment(reciprocal, 50)


def test_identity_lemma_examples():
    x1, x2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    report = identity_lemma_check(x1 * x2, 0, 9)
    assert report.points == 100
    assert report.zeros == 19
    assert report.zero_fraction == "19/100"
    assert report.bound == "1/5"
    assert report.holds

    report = identity_lemma_check(Polynomial.constant(2, 5), 0, 9)
    assert report.zero_fraction == "0"
    assert report.holds

    report = identity_lemma_check(Polynomial.variable(1, 0) - 5, 1, 10)
    assert report.zero_fraction == "1/10"
    assert report.bound == "1/10"
    assert report.holds


def test_identity_lemma_rejects_zero_polynomial():
    with pytest.raises(UsageError):
        identity_lemma_check(Polynomial.zero(2), 0, 9)


def polynomials(nvars: int, max_degree: int = 4):
    """Total degree <= max_degree, coefficient magnitudes in 1..100."""
    monos = st.tuples(*[st.integers(0, max_degree)] * nvars).filter(lambda mono: sum(mono) <= max_degree)
    coeffs = st.tuples(st.integers(1, 100), st.sampled_from([1, -1])).map(lambda pair: pair[0] * pair[1])
    return st.dictionaries(monos, coeffs, min_size=1, max_size=4).map(lambda terms: Polynomial(nvars, terms))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3).flatmap(polynomials))
def test_identity_lemma_holds_for_random_polynomials(f):
    if not f:
        return
    if f.nvars < 3:
        report = identity_lemma_check(f, 1, 100)
        assert report.points == 100**f.nvars
    else:
        report = identity_lemma_check(f, 1, 100, mode="sampled", trials=2000)
    assert report.bound == str(Fraction(int(f.degree()), 100))
    assert report.holds


def test_error_budget_arithmetic():
    s = 2
    report = error_budget(s, 4 * s * 2**s, amplification=4)
    assert report.unsat_specialization_bound == "1/4"
    assert report.false_positive_rate == "1/16"
    assert report.correct_given_unsat == "45/64"
    assert report.correct_given_sat is None
    assert error_budget(2, 12, growth_c=1).correct_given_sat == "2/3"
    with pytest.raises(UsageError):
        error_budget(0, 10)
