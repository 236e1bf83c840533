"""Heuristic HN oracle: the density of primes p for which a system has a zero in 𝔽_p^n."""

from __future__ import annotations

import logging
import random
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

import sympy
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from hnpkit.errors import BudgetExceeded, PreconditionError, UsageError
from hnpkit.groebner.oracles import Answer, hn_decide
from hnpkit.polycore.fields import GF
from hnpkit.polycore.polynomial import Polynomial
from hnpkit.polycore.system import reduce_mod_p
from hnpkit.utils.settings import DEFAULT_SEED, Budget, get_settings
from hnpkit.utils.tracing import span
from hnpkit.utils.typing import ModpReport, PrimeRecord, fraction_text

logger = logging.getLogger(__name__)


def parse_fraction(value: Any) -> Fraction:
    """Accept ``"p/q"``, integers, Fractions and decimal strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise UsageError("thresholds are exact rationals; pass them as 'p/q'")
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"not a rational number: {value!r}") from e


def parse_prime_range(text: str) -> tuple[int, int]:
    """``"lo..hi"`` (inclusive) to a pair of integers."""
    lo_text, sep, hi_text = text.partition("..")
    try:
        if not sep:
            raise ValueError(text)
        return int(lo_text), int(hi_text)
    except ValueError as e:
        raise UsageError(f"prime range must look like 'lo..hi', got {text!r}") from e


class PrimeSamplerConfig(BaseModel):
    """``samples=None`` selects every prime in the range."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lo: int = 2
    hi: int = 500
    samples: int | None = None
    tau: Fraction = Fraction(1, 5)
    seed: int = DEFAULT_SEED

    @field_validator("tau", mode="before")
    @classmethod
    def _parse_tau(cls, value: Any) -> Fraction:
        return parse_fraction(value)

    @model_validator(mode="after")
    def _check(self) -> PrimeSamplerConfig:
        if self.lo < 2:
            raise ValueError("prime range must start at 2 or above")
        if self.hi < self.lo:
            raise ValueError("prime range is empty")
        if self.samples is not None and self.samples < 1:
            raise ValueError("sample count must be at least 1")
        if not 0 < self.tau < 1:
            raise ValueError("tau must lie strictly between 0 and 1")
        return self

    def primes(self) -> list[int]:
        return [int(p) for p in sympy.primerange(self.lo, self.hi + 1)]


def _require_integral(polys: Sequence[Polynomial]) -> None:
    for f in polys:
        if any(not isinstance(c, int) for c in f.coefficients()):
            raise PreconditionError("the prime oracle needs integer coefficients; clear denominators first")


def decide_at_prime(polys: Sequence[Polynomial], p: int, budget: Budget | None = None) -> Answer:
    return hn_decide([reduce_mod_p(f, p) for f in polys], GF(p), budget)


def _record(polys: Sequence[Polynomial], p: int, budget: Budget | None, scaling: int | None) -> PrimeRecord:
    divides = None if scaling is None else scaling % p == 0
    try:
        answer = decide_at_prime(polys, p, budget)
    except BudgetExceeded as e:
        logger.warning(f"p = {p}: {e}")
        return PrimeRecord(p=p, sat=None, budget_exceeded=True, divides_scaling=divides)
    return PrimeRecord(p=p, sat=answer is Answer.SAT, divides_scaling=divides)


def hn_decide_modp(
    polys: Sequence[Polynomial],
    cfg: PrimeSamplerConfig | None = None,
    budget: Budget | None = None,
    scaling: int | None = None,
    instance: str | None = None,
) -> ModpReport:
    """SAT iff the fraction of sampled primes with a zero over 𝔽_p is at least τ.

    Primes are drawn without replacement and reported in increasing order.
    ``scaling`` (a certificate constant) adds a divisibility flag per prime.
    """
    cfg = cfg or PrimeSamplerConfig()
    _require_integral(polys)
    primes = cfg.primes()
    wanted = len(primes) if cfg.samples is None else cfg.samples
    if wanted > len(primes):
        raise UsageError(f"range {cfg.lo}..{cfg.hi} holds {len(primes)} primes, {wanted} requested")
    exhaustive = wanted == len(primes)
    chosen = primes if exhaustive else sorted(random.Random(cfg.seed).sample(primes, wanted))

    with span("modp.hn_decide_modp", logger, primes=len(chosen), exhaustive=exhaustive) as attrs:
        records = [_record(polys, p, budget, scaling) for p in chosen]
        usable = [r for r in records if r.sat is not None]
        if not usable:
            raise BudgetExceeded("usable_primes", 1, 0)
        density = Fraction(sum(1 for r in usable if r.sat), len(usable))
        answer = Answer.SAT if density >= cfg.tau else Answer.UNSAT
        attrs.update(density=fraction_text(density), answer=answer.value)

    return ModpReport(
        instance=instance,
        answer=answer.value,
        density=fraction_text(density),
        tau=fraction_text(cfg.tau),
        sampled=len(chosen),
        usable=len(usable),
        exhaustive=exhaustive,
        per_prime=records,
    )


def prime_density_report(
    polys: Sequence[Polynomial],
    lo: int,
    hi: int,
    budget: Budget | None = None,
    scaling: int | None = None,
) -> list[PrimeRecord]:
    """One record per prime in lo..hi, in increasing order."""
    _require_integral(polys)
    primes = PrimeSamplerConfig(lo=lo, hi=hi).primes()
    cap = get_settings().max_enumeration
    if len(primes) > cap:
        raise BudgetExceeded("max_enumeration", cap, len(primes))
    with span("modp.prime_density_report", logger, primes=len(primes)):
        return [_record(polys, p, budget, scaling) for p in primes]
