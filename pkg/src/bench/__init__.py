"""Seeded-bug corpus: manifests, mutation seeding, metrics and the corpus runner."""

from src.bench.manifest import CorpusEntry, CorpusManifest, Mutation, load_manifest, parse_manifest
from src.bench.metrics import MatchSummary, RankSummary, empc_match_ratio, mfr, percentage, top_k
from src.bench.report import BenchReport, BugResult
from src.bench.runner import PreparedBug, prepare_entry, run_corpus, validate_corpus
from src.bench.seeding import (
    SeededMutant,
    enumerate_mutants,
    materialize_corpus,
    seed_mutants,
    true_activation_cycle,
)

__all__ = [
    "BenchReport",
    "BugResult",
    "CorpusEntry",
    "CorpusManifest",
    "MatchSummary",
    "Mutation",
    "PreparedBug",
    "RankSummary",
    "SeededMutant",
    "empc_match_ratio",
    "enumerate_mutants",
    "load_manifest",
    "materialize_corpus",
    "mfr",
    "parse_manifest",
    "percentage",
    "prepare_entry",
    "run_corpus",
    "seed_mutants",
    "top_k",
    "true_activation_cycle",
    "validate_corpus",
]
