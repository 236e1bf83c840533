from hnpkit.normalize.normalizer import (
    IntroducedVariable,
    NormalizationMap,
    bit_size,
    denormalize_solution,
    expand_definitions,
    is_normalized,
    normalize_system,
    size_measure,
)

__all__ = [
    "IntroducedVariable",
    "NormalizationMap",
    "bit_size",
    "denormalize_solution",
    "expand_definitions",
    "is_normalized",
    "normalize_system",
    "size_measure",
]
