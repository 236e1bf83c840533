"""Report models emitted by the command line and returned by the experiment harness.

Integers that may exceed 64 bits travel as decimal strings and exact
rationals as ``"p/q"`` strings.
"""

from fractions import Fraction
from typing import Literal

from pydantic import BaseModel

AnswerText = Literal["SAT", "UNSAT"]


def fraction_text(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class DecisionReport(BaseModel):
    """Outcome of a deterministic oracle on one instance."""

    instance: str | None = None
    answer: AnswerText
    oracle: str
    field: str = "QQ"
    witness: str | None = None
    elapsed_ms: float | None = None
    log_type: Literal["decision"] = "decision"
    service_name: Literal["hnpkit"] = "hnpkit"


class BudgetReport(BaseModel):
    instance: str | None = None
    answer: Literal["BUDGET_EXCEEDED"] = "BUDGET_EXCEEDED"
    cap: str
    limit: int
    observed: int
    log_type: Literal["decision"] = "decision"
    service_name: Literal["hnpkit"] = "hnpkit"


class PrimeRecord(BaseModel):
    p: int
    sat: bool | None
    budget_exceeded: bool = False
    divides_scaling: bool | None = None


class ModpReport(BaseModel):
    instance: str | None = None
    answer: AnswerText
    density: str
    tau: str
    sampled: int
    usable: int
    exhaustive: bool
    per_prime: list[PrimeRecord]
    reliability: Literal["HEURISTIC"] = "HEURISTIC"
    oracle: Literal["modp"] = "modp"
    elapsed_ms: float | None = None
    log_type: Literal["modp"] = "modp"
    service_name: Literal["hnpkit"] = "hnpkit"


class TrialRecord(BaseModel):
    index: int
    alpha: list[str]
    answer: AnswerText | None
    budget_exceeded: bool = False
    excluded: bool = False
    modp_densities: list[str] | None = None


class DecisionTranscript(BaseModel):
    instance: str | None = None
    answer: Literal["SAT", "UNSAT", "BUDGET_EXCEEDED"]
    oracle: Literal["groebner", "modp"]
    seed: str
    D: str
    s: int
    trials: list[TrialRecord]
    votes_sat: int
    votes_unsat: int
    config: dict[str, str | int | None]
    elapsed_ms: float | None = None
    log_type: Literal["transcript"] = "transcript"
    service_name: Literal["hnpkit"] = "hnpkit"


class CertificateReport(BaseModel):
    valid: bool
    deg_y_max: int
    deg_x_max: int
    bound_y: str
    bound_x: str
    within_bounds: bool
    k: int
    log_type: Literal["certificate"] = "certificate"
    service_name: Literal["hnpkit"] = "hnpkit"


class EquisatTrial(BaseModel):
    index: int
    alpha: list[str]
    answer: AnswerText | None
    budget_exceeded: bool = False
    a_vanishes: bool | None = None


class EquisatReport(BaseModel):
    instance: str | None = None
    truth: AnswerText
    mode: Literal["exhaustive", "sampled"]
    D: str
    s: int
    trials: int
    usable: int
    sat_count: int
    empirical_sat_fraction: str
    generic_bound: str
    exact_bound: str | None = None
    sat_lower_bound: str | None = None
    respects_bound: bool | None
    one_sided: bool | None = None
    log_type: Literal["equisat"] = "equisat"
    service_name: Literal["hnpkit"] = "hnpkit"


class IdentityLemmaReport(BaseModel):
    mode: Literal["exhaustive", "sampled"]
    lo: int
    hi: int
    points: int
    zeros: int
    zero_fraction: str
    bound: str
    holds: bool
    log_type: Literal["identity_lemma"] = "identity_lemma"
    service_name: Literal["hnpkit"] = "hnpkit"


class ErrorBudgetReport(BaseModel):
    s: int
    D: str
    amplification: int
    unsat_specialization_bound: str
    false_positive_rate: str
    correct_given_unsat: str
    correct_given_sat: str | None = None
    log_type: Literal["error_budget"] = "error_budget"
    service_name: Literal["hnpkit"] = "hnpkit"


class SuiteRow(BaseModel):
    instance: str
    label: AnswerText
    oracle_answer: AnswerText | None
    label_ok: bool
    normalize_ok: bool
    randomized_ok: bool
    certificate_ok: bool | None
    bounded_search_ok: bool | None
    equisat_ok: bool | None = None
    trial_disagreements: int | None = None
    passed: bool
    detail: str = ""
