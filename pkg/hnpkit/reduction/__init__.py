from hnpkit.reduction.config import (
    DEFAULT_D,
    ReductionConfig,
    compute_D,
    growth_exponent,
    sample_alpha,
    trial_rng,
    uniform_below,
)
from hnpkit.reduction.experiments import equisat_experiment, error_budget, identity_lemma_check
from hnpkit.reduction.randomized import hnp_decide_randomized, hnp_decide_randomized_async, run_trial

__all__ = [
    "DEFAULT_D",
    "ReductionConfig",
    "compute_D",
    "equisat_experiment",
    "error_budget",
    "growth_exponent",
    "hnp_decide_randomized",
    "hnp_decide_randomized_async",
    "identity_lemma_check",
    "run_trial",
    "sample_alpha",
    "trial_rng",
    "uniform_below",
]
