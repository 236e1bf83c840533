"""Configuration of the randomized reduction and the specialization bound D."""

from __future__ import annotations

import hashlib
import random
from typing import Literal

import sympy
from pydantic import BaseModel, ConfigDict, Field, model_validator

from hnpkit.errors import UsageError
from hnpkit.modp.oracle import PrimeSamplerConfig
from hnpkit.utils.settings import DEFAULT_SEED

DEFAULT_D = 10**6

# Width of one random block; D of any size is drawn from whole blocks.
BLOCK_BITS = 64


def growth_exponent(s: int, c: int) -> int:
    """ceil((s·log₂ s)^c), evaluated exactly; 0 for s = 1."""
    if s < 1 or c < 1:
        raise UsageError(f"need s >= 1 and c >= 1, got s = {s}, c = {c}")
    return int(sympy.ceiling((s * sympy.log(s, 2)) ** c))


def compute_D(s: int, c: int) -> int:
    """3·2^ceil((s·log₂ s)^c)."""
    return 3 * 2 ** growth_exponent(s, c)


class ReductionConfig(BaseModel):
    """Exactly one of ``D`` and ``growth_c`` sets the specialization range; D = 10⁶ when neither does."""

    model_config = ConfigDict(frozen=True)

    D: int | None = Field(default=None, ge=1)
    growth_c: int | None = Field(default=None, ge=1)
    trials: int = Field(default=5, ge=1)
    amplification: int = Field(default=4, ge=1)
    oracle: Literal["groebner", "modp"] = "groebner"
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    modp: PrimeSamplerConfig = Field(default_factory=PrimeSamplerConfig)

    @model_validator(mode="after")
    def _one_range(self) -> ReductionConfig:
        if self.D is not None and self.growth_c is not None:
            raise ValueError("give either an explicit D or a growth constant c, not both")
        return self

    def resolve_D(self, s: int) -> int:
        if self.growth_c is not None:
            return compute_D(max(s, 1), self.growth_c)
        return self.D if self.D is not None else DEFAULT_D

    def echo(self) -> dict[str, str | int | None]:
        return {
            "D": None if self.D is None else str(self.D),
            "growth_c": self.growth_c,
            "trials": self.trials,
            "amplification": self.amplification,
            "oracle": self.oracle,
            "seed": str(self.seed),
            "primes": f"{self.modp.lo}..{self.modp.hi}",
            "tau": f"{self.modp.tau.numerator}/{self.modp.tau.denominator}",
        }


def trial_rng(seed: int, index: int) -> random.Random:
    """Independent deterministic stream for one trial."""
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def uniform_below(bound: int, rng: random.Random) -> int:
    """Uniform integer in [0, bound) by rejection on 64-bit blocks."""
    if bound < 1:
        raise UsageError("sampling range must be nonempty")
    blocks = max(1, -(-bound.bit_length() // BLOCK_BITS))
    span_size = 1 << (BLOCK_BITS * blocks)
    limit = span_size - span_size % bound
    while True:
        value = 0
        for _ in range(blocks):
            value = (value << BLOCK_BITS) | rng.getrandbits(BLOCK_BITS)
        if value < limit:
            return value % bound


def sample_alpha(m: int, D: int, rng: random.Random) -> list[int]:
    """m independent uniform draws from {1, ..., D}."""
    if D < 1:
        raise UsageError(f"D must be positive, got {D}")
    return [1 + uniform_below(D, rng) for _ in range(m)]
