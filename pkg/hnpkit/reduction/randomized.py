"""Randomized reduction: specialize the parameters at random points and ask an HN oracle."""

from __future__ import annotations

import logging

from anyio import create_task_group, to_thread

from hnpkit.errors import BudgetExceeded
from hnpkit.groebner.oracles import Answer, hn_decide
from hnpkit.modp.oracle import hn_decide_modp
from hnpkit.polycore.fields import QQ
from hnpkit.polycore.system import PolynomialSystem, specialize_system
from hnpkit.reduction.config import ReductionConfig, sample_alpha, trial_rng
from hnpkit.utils.settings import Budget
from hnpkit.utils.tracing import span
from hnpkit.utils.typing import DecisionTranscript, TrialRecord

logger = logging.getLogger(__name__)


def _modp_trial(polys, cfg: ReductionConfig, rng, budget: Budget | None) -> tuple[Answer, list[str]]:
    """Amplified prime oracle: SAT only when every one of the ℓ independent runs says SAT."""
    densities: list[str] = []
    answer = Answer.SAT
    for _ in range(cfg.amplification):
        sampler = cfg.modp.model_copy(update={"seed": rng.getrandbits(64)})
        report = hn_decide_modp(polys, sampler, budget)
        densities.append(report.density)
        if report.answer == Answer.UNSAT.value:
            answer = Answer.UNSAT
    return answer, densities


def run_trial(
    S: PolynomialSystem, cfg: ReductionConfig, D: int, index: int, budget: Budget | None = None
) -> TrialRecord:
    rng = trial_rng(cfg.seed, index)
    alpha = sample_alpha(S.m, D, rng)
    polys = specialize_system(S, alpha)
    densities = None
    try:
        if cfg.oracle == "modp":
            answer, densities = _modp_trial(polys, cfg, rng, budget)
        else:
            answer = hn_decide(polys, QQ, budget)
    except BudgetExceeded as e:
        logger.warning(f"trial {index} excluded: {e}")
        return TrialRecord(index=index, alpha=[str(a) for a in alpha], answer=None, budget_exceeded=True, excluded=True)
    return TrialRecord(index=index, alpha=[str(a) for a in alpha], answer=answer.value, modp_densities=densities)


def _assemble(
    S: PolynomialSystem,
    cfg: ReductionConfig,
    D: int,
    trials: list[TrialRecord],
    instance: str | None,
) -> DecisionTranscript:
    trials = sorted(trials, key=lambda t: t.index)
    votes_sat = sum(1 for t in trials if t.answer == Answer.SAT.value)
    votes_unsat = sum(1 for t in trials if t.answer == Answer.UNSAT.value)
    if votes_sat + votes_unsat == 0:
        answer = "BUDGET_EXCEEDED"
    else:
        # ties go to UNSAT
        answer = Answer.SAT.value if votes_sat > votes_unsat else Answer.UNSAT.value
    return DecisionTranscript(
        instance=instance,
        answer=answer,
        oracle=cfg.oracle,
        seed=str(cfg.seed),
        D=str(D),
        s=S.s,
        trials=trials,
        votes_sat=votes_sat,
        votes_unsat=votes_unsat,
        config=cfg.echo(),
    )


def hnp_decide_randomized(
    S: PolynomialSystem,
    cfg: ReductionConfig | None = None,
    budget: Budget | None = None,
    instance: str | None = None,
) -> DecisionTranscript:
    """Majority answer over ``cfg.trials`` random specializations α ∈ {1..D}^m.

    The transcript carries every α and per-trial answer; identical inputs
    give identical transcripts.
    """
    cfg = cfg or ReductionConfig()
    S = S.cleared()
    D = cfg.resolve_D(S.s)
    with span("reduction.hnp_decide_randomized", logger, trials=cfg.trials, oracle=cfg.oracle) as attrs:
        trials = [run_trial(S, cfg, D, i, budget) for i in range(cfg.trials)]
        transcript = _assemble(S, cfg, D, trials, instance)
        attrs.update(answer=transcript.answer, votes_sat=transcript.votes_sat, votes_unsat=transcript.votes_unsat)
    return transcript


async def hnp_decide_randomized_async(
    S: PolynomialSystem,
    cfg: ReductionConfig | None = None,
    budget: Budget | None = None,
    instance: str | None = None,
) -> DecisionTranscript:
    """Same transcript as ``hnp_decide_randomized`` with the trials run in worker threads."""
    cfg = cfg or ReductionConfig()
    S = S.cleared()
    D = cfg.resolve_D(S.s)
    results: list[TrialRecord] = []

    async def one(index: int) -> None:
        results.append(await to_thread.run_sync(run_trial, S, cfg, D, index, budget))

    async with create_task_group() as tg:
        for i in range(cfg.trials):
            tg.start_soon(one, i)
    return _assemble(S, cfg, D, results, instance)
