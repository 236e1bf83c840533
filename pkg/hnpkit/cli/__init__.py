from hnpkit.cli.app import cli, run
from hnpkit.cli.corpus import Corpus, CorpusEntry, check_entry, run_corpus_suite, run_corpus_suite_async

__all__ = ["Corpus", "CorpusEntry", "check_entry", "cli", "run", "run_corpus_suite", "run_corpus_suite_async"]
