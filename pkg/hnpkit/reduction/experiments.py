"""Empirical checks of the specialization bounds and the exact error arithmetic."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterator
from fractions import Fraction
from typing import Literal

from hnpkit.errors import BudgetExceeded, UsageError
from hnpkit.groebner.oracles import Answer, hn_decide, hnp_decide_elimination
from hnpkit.polycore.fields import QQ
from hnpkit.polycore.polynomial import Polynomial
from hnpkit.polycore.system import PolynomialSystem, specialize_system
from hnpkit.reduction.config import growth_exponent, sample_alpha, trial_rng, uniform_below
from hnpkit.utils.settings import DEFAULT_SEED, Budget, get_settings
from hnpkit.utils.tracing import span
from hnpkit.utils.typing import EquisatReport, EquisatTrial, ErrorBudgetReport, IdentityLemmaReport, fraction_text

logger = logging.getLogger(__name__)

Mode = Literal["exhaustive", "sampled"]


def sampling_tolerance(p: Fraction, trials: int) -> float:
    """Three binomial standard deviations plus one count of slack."""
    q = min(max(float(p), 0.0), 1.0)
    return 3 * math.sqrt(q * (1 - q) / trials) + 1 / trials


def _grid(m: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(lo, hi + 1), repeat=m)


def _check_enumeration(width: int, dims: int) -> None:
    cap = get_settings().max_enumeration
    count = width**dims
    if count > cap:
        raise BudgetExceeded("max_enumeration", cap, count)


def equisat_experiment(
    S: PolynomialSystem,
    D: int,
    trials: int | None = None,
    seed: int = DEFAULT_SEED,
    mode: Mode = "sampled",
    growth_c: int | None = None,
    budget: Budget | None = None,
    instance: str | None = None,
) -> EquisatReport:
    """Fraction of specializations α ∈ {1..D}^m that are satisfiable, against the applicable bound.

    For UNSAT systems the sharp bound is deg(a)/D with a the eliminant; the
    generic one is s·2^s/D. For SAT systems a lower bound is reported when
    ``growth_c`` is given.
    """
    if D < 1:
        raise UsageError(f"D must be positive, got {D}")
    S = S.cleared()
    s = S.s
    truth = hnp_decide_elimination(S, budget=budget)
    a = truth.witness
    if mode == "exhaustive":
        _check_enumeration(D, S.m)
        points: list[tuple[int, ...]] = list(_grid(S.m, 1, D))
    else:
        if trials is None or trials < 1:
            raise UsageError("sampled mode needs trials >= 1")
        points = [tuple(sample_alpha(S.m, D, trial_rng(seed, i))) for i in range(trials)]

    records: list[EquisatTrial] = []
    with span("reduction.equisat_experiment", logger, mode=mode, points=len(points)) as attrs:
        for index, alpha in enumerate(points):
            vanishes = None if a is None else a.evaluate(list(alpha)) == 0
            try:
                answer = hn_decide(specialize_system(S, alpha), QQ, budget).value
            except BudgetExceeded as e:
                logger.warning(f"alpha {alpha} skipped: {e}")
                records.append(EquisatTrial(index=index, alpha=[str(v) for v in alpha], answer=None, budget_exceeded=True, a_vanishes=vanishes))
                continue
            records.append(EquisatTrial(index=index, alpha=[str(v) for v in alpha], answer=answer, a_vanishes=vanishes))
        usable = [r for r in records if r.answer is not None]
        sat_count = sum(1 for r in usable if r.answer == Answer.SAT.value)
        fraction = Fraction(sat_count, len(usable)) if usable else Fraction(0)
        attrs.update(usable=len(usable), sat=sat_count)

    generic = Fraction(s * 2**s, D)
    exact = None if a is None else Fraction(max(int(a.degree()), 0), D)
    sat_floor = None
    if growth_c is not None:
        sat_floor = max(Fraction(0), 1 - Fraction(2 ** growth_exponent(max(s, 1), growth_c), D))

    respects: bool | None = None
    one_sided: bool | None = None
    exact_counts = mode == "exhaustive"
    if usable and truth.answer is Answer.UNSAT:
        bound = exact if exact is not None else generic
        slack = 0.0 if exact_counts else sampling_tolerance(bound, len(usable))
        respects = float(fraction) <= float(bound) + slack if slack else fraction <= bound
        one_sided = all(r.a_vanishes for r in usable if r.answer == Answer.SAT.value)
    elif usable and sat_floor is not None:
        slack = 0.0 if exact_counts else sampling_tolerance(sat_floor, len(usable))
        respects = float(fraction) >= float(sat_floor) - slack if slack else fraction >= sat_floor

    return EquisatReport(
        instance=instance,
        truth=truth.answer.value,
        mode=mode,
        D=str(D),
        s=s,
        trials=len(records),
        usable=len(usable),
        sat_count=sat_count,
        empirical_sat_fraction=fraction_text(fraction),
        generic_bound=fraction_text(generic),
        exact_bound=None if exact is None else fraction_text(exact),
        sat_lower_bound=None if sat_floor is None else fraction_text(sat_floor),
        respects_bound=respects,
        one_sided=one_sided,
    )


def identity_lemma_check(
    f: Polynomial,
    lo: int,
    hi: int,
    mode: Mode = "exhaustive",
    trials: int | None = None,
    seed: int = DEFAULT_SEED,
) -> IdentityLemmaReport:
    """Pr(f(r) = 0) for r uniform on {lo..hi}^nvars against deg(f)/|range|."""
    if not f:
        raise UsageError("the zero polynomial vanishes everywhere")
    if hi < lo:
        raise UsageError(f"empty range {lo}..{hi}")
    width = hi - lo + 1
    bound = Fraction(max(int(f.degree()), 0), width)
    if mode == "exhaustive":
        _check_enumeration(width, f.nvars)
        points = _grid(f.nvars, lo, hi)
    else:
        if trials is None or trials < 1:
            raise UsageError("sampled mode needs trials >= 1")
        points = (
            tuple(lo + uniform_below(width, rng) for _ in range(f.nvars))
            for rng in (trial_rng(seed, i) for i in range(trials))
        )
    total = zeros = 0
    for point in points:
        total += 1
        if f.evaluate(list(point)) == 0:
            zeros += 1
    fraction = Fraction(zeros, total)
    if mode == "exhaustive":
        holds = fraction <= bound
    else:
        holds = float(fraction) <= float(bound) + sampling_tolerance(bound, total)
    return IdentityLemmaReport(
        mode=mode,
        lo=lo,
        hi=hi,
        points=total,
        zeros=zeros,
        zero_fraction=fraction_text(fraction),
        bound=fraction_text(bound),
        holds=holds,
    )


def error_budget(s: int, D: int, amplification: int = 4, growth_c: int | None = None) -> ErrorBudgetReport:
    """Exact error arithmetic of the randomized reduction.

    A specialization of an UNSAT system is SAT with probability at most
    s·2^s/D; the amplified prime oracle errs with probability 2^-ℓ.
    """
    if s < 1 or D < 1 or amplification < 1:
        raise UsageError("need s >= 1, D >= 1 and amplification >= 1")
    bad_point = Fraction(s * 2**s, D)
    false_positive = Fraction(1, 2**amplification)
    correct_unsat = (1 - min(bad_point, Fraction(1))) * (1 - false_positive)
    correct_sat = None
    if growth_c is not None:
        correct_sat = max(Fraction(0), 1 - Fraction(2 ** growth_exponent(s, growth_c), D))
    return ErrorBudgetReport(
        s=s,
        D=str(D),
        amplification=amplification,
        unsat_specialization_bound=fraction_text(bad_point),
        false_positive_rate=fraction_text(false_positive),
        correct_given_unsat=fraction_text(correct_unsat),
        correct_given_sat=None if correct_sat is None else fraction_text(correct_sat),
    )
