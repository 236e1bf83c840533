from hnpkit.modp.oracle import (
    PrimeSamplerConfig,
    decide_at_prime,
    hn_decide_modp,
    parse_fraction,
    parse_prime_range,
    prime_density_report,
)

__all__ = [
    "PrimeSamplerConfig",
    "decide_at_prime",
    "hn_decide_modp",
    "parse_fraction",
    "parse_prime_range",
    "prime_density_report",
]
