from hnpkit.algebraic.primitive import (
    ChainStep,
    PrimitiveChain,
    PrimitiveElement,
    discriminant_denominator,
    integral_scaling_bound,
    make_integral,
    minpoly_sum,
    primitive_element,
    primitive_element_chain,
    primitive_element_system,
)
from hnpkit.algebraic.resultants import bareiss_determinant, discriminant, sylvester_matrix, sylvester_resultant
from hnpkit.algebraic.univariate import UnivarPoly, univariate_gcd
from hnpkit.algebraic.witness import (
    SolutionWitness,
    WitnessSpecialization,
    check_witness,
    specialize_witness,
    witness_from_json,
    witness_to_json,
)

__all__ = [
    "ChainStep",
    "PrimitiveChain",
    "PrimitiveElement",
    "SolutionWitness",
    "UnivarPoly",
    "WitnessSpecialization",
    "bareiss_determinant",
    "check_witness",
    "discriminant",
    "discriminant_denominator",
    "integral_scaling_bound",
    "make_integral",
    "minpoly_sum",
    "primitive_element",
    "primitive_element_chain",
    "primitive_element_system",
    "specialize_witness",
    "sylvester_matrix",
    "sylvester_resultant",
    "univariate_gcd",
    "witness_from_json",
    "witness_to_json",
]
