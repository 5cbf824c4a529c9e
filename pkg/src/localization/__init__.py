"""Activation cycles, trace pruning, dual scores, SBFL baselines and ranking."""

from src.localization.activation import (
    Activation,
    ActivationMap,
    Exclusion,
    activation_cycle,
    observation_only,
)
from src.localization.baselines import (
    Formula,
    SpectrumCounts,
    baseline_score,
    combined_counts,
    spectrum_counts,
)
from src.localization.localizer import (
    FailureAnalysis,
    analyze_failures,
    localize_runs,
    rank_runs,
)
from src.localization.modes import LocalizationMode
from src.localization.pruning import TruncationLevel, prune_trace, retained_stop
from src.localization.ranking import RankedEntry, RankedList, StatementEvidence, rank_statements
from src.localization.scoring import SuspicionScore, dual_score

__all__ = [
    "Activation",
    "ActivationMap",
    "Exclusion",
    "FailureAnalysis",
    "Formula",
    "LocalizationMode",
    "RankedEntry",
    "RankedList",
    "SpectrumCounts",
    "StatementEvidence",
    "SuspicionScore",
    "TruncationLevel",
    "activation_cycle",
    "analyze_failures",
    "baseline_score",
    "combined_counts",
    "dual_score",
    "localize_runs",
    "observation_only",
    "prune_trace",
    "rank_runs",
    "rank_statements",
    "retained_stop",
]
