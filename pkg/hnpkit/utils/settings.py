import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict

load_dotenv()

# Seed used by every randomized command unless overridden.
DEFAULT_SEED = 20240917


class Budget(BaseModel):
    """Resource caps for the Gröbner engine; exceeding one is reported, never guessed around."""

    model_config = ConfigDict(frozen=True)

    max_basis_size: int = 400
    max_terms: int = 5000
    max_reductions: int = 200_000


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True)

    default_seed: int = DEFAULT_SEED
    max_basis_size: int = 400
    max_terms: int = 5000
    max_reductions: int = 200_000
    max_monomials: int = 4000
    max_enumeration: int = 2_000_000
    output_dir: str = "./hnp_output"
    log_level: str = "INFO"

    def budget(self) -> Budget:
        return Budget(
            max_basis_size=self.max_basis_size,
            max_terms=self.max_terms,
            max_reductions=self.max_reductions,
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Reads the optional HNP_* environment (and .env) once per process."""
    return Settings(
        default_seed=int(os.environ.get("HNP_DEFAULT_SEED", DEFAULT_SEED)),
        max_basis_size=int(os.environ.get("HNP_MAX_BASIS_SIZE", 400)),
        max_terms=int(os.environ.get("HNP_MAX_TERMS", 5000)),
        max_reductions=int(os.environ.get("HNP_MAX_REDUCTIONS", 200_000)),
        max_monomials=int(os.environ.get("HNP_MAX_MONOMIALS", 4000)),
        max_enumeration=int(os.environ.get("HNP_MAX_ENUMERATION", 2_000_000)),
        output_dir=os.environ.get("HNP_OUTPUT_DIR", "./hnp_output"),
        log_level=os.environ.get("HNP_LOG_LEVEL", "INFO"),
    )


def default_budget() -> Budget:
    return get_settings().budget()
