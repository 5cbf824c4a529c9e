"""
Classic spectrum-based formulas over per-cycle spectra.

Every simulated cycle is one "test": its executed set is the coverage row and
its CycleResults verdict the outcome.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.traces.model import CycleResults, ExecutionTrace, TestRun


class Formula(str, Enum):
    TARANTULA = "tarantula"
    OCHIAI = "ochiai"


@dataclass(frozen=True)
class SpectrumCounts:
    """Executed/not-executed counts in failing and passing cycles"""

    ef: int
    ep: int
    nf: int
    np: int

    @property
    def total_failed(self) -> int:
        return self.ef + self.nf

    @property
    def total_passed(self) -> int:
        return self.ep + self.np


def _counts_from_arrays(
    ef: np.ndarray, ep: np.ndarray, failed: int, passed: int
) -> list[SpectrumCounts]:
    return [
        SpectrumCounts(int(f), int(p), failed - int(f), passed - int(p))
        for f, p in zip(ef, ep, strict=True)
    ]


def spectrum_counts(trace: ExecutionTrace, results: CycleResults) -> list[SpectrumCounts]:
    """
    Per-statement counts for one run.

    Args:
        trace: Execution trace (cycles x statements)
        results: Verdict of every cycle

    Returns:
        SpectrumCounts indexed by stmt_id
    """
    coverage = trace.matrix
    fail = ~results.as_array()
    ef = coverage[fail].sum(axis=0)
    ep = coverage[~fail].sum(axis=0)
    return _counts_from_arrays(ef, ep, int(fail.sum()), int((~fail).sum()))


def combined_counts(runs: Sequence[TestRun], stmt_count: int) -> list[SpectrumCounts]:
    """Counts over the cycles of several runs taken together"""
    ef = np.zeros(stmt_count, dtype=np.int64)
    ep = np.zeros(stmt_count, dtype=np.int64)
    failed = passed = 0
    for run in runs:
        coverage = run.trace.matrix
        fail = ~run.results.as_array()
        ef += coverage[fail].sum(axis=0)
        ep += coverage[~fail].sum(axis=0)
        failed += int(fail.sum())
        passed += int((~fail).sum())
    return _counts_from_arrays(ef, ep, failed, passed)


def tarantula(counts: SpectrumCounts) -> float:
    failed, passed = counts.total_failed, counts.total_passed
    fail_ratio = counts.ef / failed if failed else 0.0
    pass_ratio = counts.ep / passed if passed else 0.0
    if fail_ratio + pass_ratio == 0:
        return 0.0
    return fail_ratio / (fail_ratio + pass_ratio)


def ochiai(counts: SpectrumCounts) -> float:
    denominator = math.sqrt(counts.total_failed * (counts.ef + counts.ep))
    if denominator == 0:
        return 0.0
    return counts.ef / denominator


def suspiciousness(counts: SpectrumCounts, formula: Formula) -> float:
    if formula is Formula.TARANTULA:
        return tarantula(counts)
    return ochiai(counts)


def baseline_score(counts: Sequence[SpectrumCounts], formula: Formula) -> list[float]:
    """
    Score every statement with a classic formula.

    Args:
        counts: SpectrumCounts indexed by stmt_id
        formula: tarantula or ochiai

    Returns:
        Scores indexed by stmt_id; zero denominators give 0
    """
    return [suspiciousness(c, formula) for c in counts]
