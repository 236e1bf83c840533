from hnpkit.polycore.fields import GF, QQ, Field, PrimeField, PrimeFieldElem, RationalField, parse_field
from hnpkit.polycore.polynomial import NEG_INFINITY, Polynomial
from hnpkit.polycore.rational_function import RationalFunction
from hnpkit.polycore.system import (
    ParamPolynomial,
    PolynomialSystem,
    clear_denominators,
    raw_size,
    reduce_mod_p,
    specialize,
    specialize_system,
)

__all__ = [
    "GF",
    "QQ",
    "Field",
    "NEG_INFINITY",
    "ParamPolynomial",
    "Polynomial",
    "PolynomialSystem",
    "PrimeField",
    "PrimeFieldElem",
    "RationalField",
    "RationalFunction",
    "clear_denominators",
    "parse_field",
    "raw_size",
    "reduce_mod_p",
    "specialize",
    "specialize_system",
]
