"""Labeled corpus of parametric systems and the acceptance suite run over it."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

from anyio import create_task_group, to_thread

from hnpkit.certificate import bounded_degree_search, find_certificate, verify_certificate
from hnpkit.errors import BudgetExceeded, HnpError, UsageError
from hnpkit.groebner import Answer, hnp_decide_elimination
from hnpkit.normalize import is_normalized, normalize_system
from hnpkit.polycore import PolynomialSystem
from hnpkit.reduction import ReductionConfig, equisat_experiment, hnp_decide_randomized
from hnpkit.sysio import parse_system
from hnpkit.utils.settings import DEFAULT_SEED, Budget
from hnpkit.utils.tracing import span
from hnpkit.utils.typing import SuiteRow

logger = logging.getLogger(__name__)

LABELS_FILE = "labels.json"

SUITE_FIELDS = list(SuiteRow.model_fields)

# Bounded-degree search is only attempted on systems this small.
BOUNDED_SEARCH_MAX_K = 3

SUITE_D = 10**6
SUITE_TRIALS = 5

# UNSAT systems are specialized at every point of {1..EQUISAT_D}^m.
EQUISAT_D = 50


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    path: Path
    label: Answer
    provenance: str = ""

    def load(self) -> PolynomialSystem:
        return parse_system(self.path.read_bytes())


@dataclass(frozen=True)
class Corpus:
    """``*.sys`` files in one directory; labels live apart from the inputs in ``labels.json``."""

    directory: Path
    entries: tuple[CorpusEntry, ...]

    @classmethod
    def load(cls, directory: str | Path) -> Corpus:
        root = Path(directory)
        if not root.is_dir():
            raise UsageError(f"corpus directory {root} does not exist")
        labels_path = root / LABELS_FILE
        labels: dict = {}
        if labels_path.exists():
            try:
                labels = json.loads(labels_path.read_text())
            except json.JSONDecodeError as e:
                raise UsageError(f"{labels_path} is not valid JSON: {e.msg}") from e
        entries = []
        for path in sorted(root.glob("*.sys")):
            info = labels.get(path.stem)
            if info is None:
                raise UsageError(f"{path.name} has no entry in {LABELS_FILE}")
            try:
                label = Answer(info["label"])
            except (KeyError, TypeError, ValueError) as e:
                raise UsageError(f"bad label for {path.stem}: {info!r}") from e
            entries.append(CorpusEntry(path.stem, path, label, str(info.get("provenance", ""))))
        logger.info(f"loaded {len(entries)} corpus systems from {root}")
        return cls(root, tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, name: str) -> CorpusEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise UsageError(f"no corpus system named {name!r}")


def _bounded_search_ok(S: PolynomialSystem, truth: Answer) -> bool | None:
    if S.k > BOUNDED_SEARCH_MAX_K:
        return None
    try:
        cert = bounded_degree_search(S, 2**S.k, S.k * 2**S.k)
    except BudgetExceeded as e:
        logger.warning(f"bounded search skipped: {e}")
        return None
    return (cert is not None) == (truth is Answer.UNSAT)


def check_entry(entry: CorpusEntry, seed: int = DEFAULT_SEED, budget: Budget | None = None) -> SuiteRow:
    """Every acceptance check for one instance; failures are reported in the row, never raised."""
    details: list[str] = []
    oracle_answer: Answer | None = None
    label_ok = normalize_ok = randomized_ok = False
    certificate_ok: bool | None = None
    bounded_ok: bool | None = None
    equisat_ok: bool | None = None
    disagreements: int | None = None
    with span("cli.check_entry", logger, instance=entry.name) as attrs:
        try:
            S = entry.load().cleared()
            oracle_answer = hnp_decide_elimination(S, budget=budget).answer
            label_ok = oracle_answer is entry.label
            if not label_ok:
                details.append(f"label {entry.label.value} but elimination says {oracle_answer.value}")

            S_norm, _ = normalize_system(S)
            normalize_ok = is_normalized(S_norm) and hnp_decide_elimination(S_norm, budget=budget).answer is oracle_answer
            if not normalize_ok:
                details.append("normalization changed the answer or the shape")

            cfg = ReductionConfig(D=SUITE_D, trials=SUITE_TRIALS, seed=seed)
            transcript = hnp_decide_randomized(S, cfg, budget, entry.name)
            randomized_ok = transcript.answer == oracle_answer.value
            if not randomized_ok:
                details.append(f"randomized majority {transcript.answer}")
            disagreements = sum(
                1 for t in transcript.trials if t.answer is not None and t.answer != oracle_answer.value
            )

            if oracle_answer is Answer.UNSAT:
                certificate_ok = verify_certificate(S, find_certificate(S, budget)).valid
                if not certificate_ok:
                    details.append("certificate does not verify")
                report = equisat_experiment(S, EQUISAT_D, mode="exhaustive", budget=budget, instance=entry.name)
                equisat_ok = report.respects_bound is not False
                if not equisat_ok:
                    details.append(f"{report.empirical_sat_fraction} of specializations are SAT, above {report.exact_bound}")
            bounded_ok = _bounded_search_ok(S, oracle_answer)
            if bounded_ok is False:
                details.append("bounded-degree search disagrees")
        except HnpError as e:
            details.append(f"{type(e).__name__}: {e}")
        passed = (
            label_ok
            and normalize_ok
            and randomized_ok
            and certificate_ok is not False
            and bounded_ok is not False
            and equisat_ok is not False
        )
        attrs.update(passed=passed, disagreements=disagreements)
    return SuiteRow(
        instance=entry.name,
        label=entry.label.value,
        oracle_answer=None if oracle_answer is None else oracle_answer.value,
        label_ok=label_ok,
        normalize_ok=normalize_ok,
        randomized_ok=randomized_ok,
        certificate_ok=certificate_ok,
        bounded_search_ok=bounded_ok,
        equisat_ok=equisat_ok,
        trial_disagreements=disagreements,
        passed=passed,
        detail="; ".join(details),
    )


def run_corpus_suite(corpus: Corpus, seed: int = DEFAULT_SEED, budget: Budget | None = None) -> list[SuiteRow]:
    """One row per corpus instance, ordered by instance name."""
    return [check_entry(entry, seed, budget) for entry in corpus.entries]


async def run_corpus_suite_async(
    corpus: Corpus, seed: int = DEFAULT_SEED, budget: Budget | None = None
) -> list[SuiteRow]:
    rows: list[SuiteRow] = []

    async def one(entry: CorpusEntry) -> None:
        rows.append(await to_thread.run_sync(check_entry, entry, seed, budget))

    async with create_task_group() as tg:
        for entry in corpus.entries:
            tg.start_soon(one, entry)
    return sorted(rows, key=lambda row: row.instance)
