import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent
sys.path.insert(0, str(ROOT))

from hnpkit.cli.corpus import Corpus  # noqa: E402
from hnpkit.polycore import PolynomialSystem  # noqa: E402
from hnpkit.sysio import parse_system  # noqa: E402
from hnpkit.utils.settings import Budget  # noqa: E402

CORPUS_DIR = ROOT / "corpus"


@pytest.fixture(scope="session")
def corpus() -> Corpus:
    return Corpus.load(CORPUS_DIR)


@pytest.fixture
def load_system():
    """Parse a bundled corpus file by name."""

    def load(name: str) -> PolynomialSystem:
        return parse_system((CORPUS_DIR / f"{name}.sys").read_bytes())

    return load


@pytest.fixture
def system():
    """Parse ``.sys`` text given as separate lines."""

    def build(*lines: str) -> PolynomialSystem:
        return parse_system("\n".join(lines) + "\n")

    return build


@pytest.fixture
def small_budget() -> Budget:
    return Budget(max_basis_size=3, max_terms=50, max_reductions=20)


@pytest.fixture(autouse=True)
def _repo_cwd(monkeypatch):
    """Commands resolve the default corpus directory relative to the repo root."""
    monkeypatch.chdir(ROOT)
