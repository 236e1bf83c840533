from hnpkit.groebner.buchberger import (
    GroebnerBasis,
    buchberger,
    is_reduced,
    normal_form,
    spolys_reduce_to_zero,
)
from hnpkit.groebner.oracles import (
    Answer,
    EliminationResult,
    hn_decide,
    hnp_decide_elimination,
    ideal_membership_linear_algebra,
)
from hnpkit.groebner.orders import MonomialOrder

__all__ = [
    "Answer",
    "EliminationResult",
    "GroebnerBasis",
    "MonomialOrder",
    "buchberger",
    "hn_decide",
    "hnp_decide_elimination",
    "ideal_membership_linear_algebra",
    "is_reduced",
    "normal_form",
    "spolys_reduce_to_zero",
]
