"""Tests for the dual score and the spectrum-based baselines."""

import math
import random

import numpy as np
import pytest

from src.localization.activation import Activation, ActivationMap, Exclusion
from src.localization.baselines import (
    Formula,
    SpectrumCounts,
    baseline_score,
    combined_counts,
    ochiai,
    spectrum_counts,
    tarantula,
)
from src.localization.pruning import TruncationLevel
from src.localization.scoring import SuspicionScore, dual_score
from src.traces.model import CycleResults, ExecutionTrace, TestRun


def activated_at(c_act: int) -> ActivationMap:
    return ActivationMap(4, {0: Activation(0, c_act)})


def excluded() -> ActivationMap:
    return ActivationMap(4, {0: Activation(0, None, Exclusion.EMPC_INFINITE)})


class TestDualScore:
    """aef/aep accounting around the activation cycle."""

    FAILING = ExecutionTrace.from_sets([{0}, set(), {0}, {0}, {0}], 1)
    PASSING = ExecutionTrace.from_sets([{0}, {0}, set()], 1)

    @pytest.mark.parametrize(
        "level, aep",
        [(TruncationLevel.FULL, 1), (TruncationLevel.HALF, 2), (TruncationLevel.NONE, 3)],
    )
    def test_truncation_levels(self, level, aep):
        score = dual_score(0, [activated_at(2)], [self.FAILING], truncation=level)
        assert score == SuspicionScore(aef=1, aep=aep)

    def test_not_executed_at_activation(self):
        score = dual_score(0, [activated_at(1)], [self.FAILING])
        assert score == SuspicionScore(aef=0, aep=1)
        assert not score.is_candidate

    def test_passing_executions_count_in_full(self):
        score = dual_score(0, [activated_at(2)], [self.FAILING], [self.PASSING])
        assert score == SuspicionScore(aef=1, aep=3)

    def test_excluding_test_contributes_nothing(self):
        score = dual_score(0, [excluded(), activated_at(2)], [self.FAILING, self.FAILING])
        assert score == SuspicionScore(aef=1, aep=1)

    def test_failing_tests_accumulate(self):
        score = dual_score(0, [activated_at(2), activated_at(0)], [self.FAILING, self.FAILING])
        assert score == SuspicionScore(aef=2, aep=1)

    def test_inverse_and_serialization(self):
        assert SuspicionScore(1, 0).inv_aep == math.inf
        assert SuspicionScore(1, 0).to_dict() == {"aef": 1, "aep": 0, "inv_aep": "inf"}
        assert SuspicionScore(1, 3).to_dict()["inv_aep"] == 0.333333


class TestBaselines:
    def test_spectrum_counts(self):
        trace = ExecutionTrace.from_sets([{0, 1}, {0}, {1}, {0, 1}], 3)
        results = CycleResults([True, False, True, False])
        counts = spectrum_counts(trace, results)
        assert counts[0] == SpectrumCounts(ef=2, ep=1, nf=0, np=1)
        assert counts[1] == SpectrumCounts(ef=1, ep=2, nf=1, np=0)
        assert counts[2] == SpectrumCounts(ef=0, ep=0, nf=2, np=2)

    def test_combined_counts_pool_cycles(self):
        a = TestRun("a", ExecutionTrace.from_sets([{0}, {0}], 2), CycleResults([True, False]))
        b = TestRun("b", ExecutionTrace.from_sets([{1}], 2), CycleResults([False]))
        counts = combined_counts([a, b], 2)
        assert counts[0] == SpectrumCounts(ef=1, ep=1, nf=1, np=0)
        assert counts[1] == SpectrumCounts(ef=1, ep=0, nf=1, np=1)

    def test_tarantula(self):
        assert tarantula(SpectrumCounts(ef=1, ep=1, nf=0, np=1)) == pytest.approx(2 / 3)
        assert tarantula(SpectrumCounts(ef=0, ep=0, nf=1, np=1)) == 0.0
        assert tarantula(SpectrumCounts(ef=1, ep=0, nf=0, np=0)) == 1.0

    def test_ochiai(self):
        assert ochiai(SpectrumCounts(ef=1, ep=1, nf=0, np=1)) == pytest.approx(1 / math.sqrt(2))
        assert ochiai(SpectrumCounts(ef=0, ep=0, nf=0, np=3)) == 0.0

    def test_fsm_scores(self, f1_run):
        counts = spectrum_counts(f1_run.trace, f1_run.results)
        tar = baseline_score(counts, Formula.TARANTULA)
        och = baseline_score(counts, Formula.OCHIAI)
        assert tar == pytest.approx([0.5, 0.5, 0.0, 2 / 3, 0.0, 0.0, 0.5])
        assert och[3] == pytest.approx(1 / math.sqrt(2))
        assert och[0] == pytest.approx(1 / math.sqrt(3))
        assert och[4] == 0.0


def _random_trace(rng: random.Random, cycles: int, stmt_count: int) -> ExecutionTrace:
    bits = [[rng.random() < 0.5 for _ in range(stmt_count)] for _ in range(cycles)]
    return ExecutionTrace(np.array(bits, dtype=bool).reshape(cycles, stmt_count))


def _random_activations(rng: random.Random, trace: ExecutionTrace) -> ActivationMap:
    entries = {}
    for stmt_id in range(trace.stmt_count):
        if rng.random() < 0.2:
            entries[stmt_id] = Activation(stmt_id, None, Exclusion.EMPC_INFINITE)
        else:
            entries[stmt_id] = Activation(stmt_id, rng.randrange(len(trace)))
    return ActivationMap(len(trace) - 1, entries)


def _scramble_after(
    rng: random.Random, trace: ExecutionTrace, activation: Activation
) -> ExecutionTrace:
    matrix = trace.matrix.copy()
    start = 0 if activation.excluded else activation.c_act + 1
    matrix[start:] = np.array(
        [[rng.random() < 0.5 for _ in range(trace.stmt_count)] for _ in range(start, len(trace))],
        dtype=bool,
    ).reshape(len(trace) - start, trace.stmt_count)
    return ExecutionTrace(matrix)


class TestPruningSafety:
    """Under full truncation nothing after C_act reaches a statement's score."""

    def test_executions_after_activation_never_change_the_score(self):
        rng = random.Random(1234)
        scrambled_cells = 0
        for _ in range(1000):
            stmt_count = rng.randint(1, 5)
            failing = [
                _random_trace(rng, rng.randint(1, 10), stmt_count)
                for _ in range(rng.randint(1, 3))
            ]
            passing = [
                _random_trace(rng, rng.randint(1, 6), stmt_count) for _ in range(rng.randint(0, 2))
            ]
            activations = [_random_activations(rng, trace) for trace in failing]

            for stmt_id in range(stmt_count):
                before = dual_score(stmt_id, activations, failing, passing)
                scrambled = [
                    _scramble_after(rng, trace, activation[stmt_id])
                    for trace, activation in zip(failing, activations)
                ]
                scrambled_cells += sum(
                    int((a.matrix != b.matrix).sum()) for a, b in zip(failing, scrambled)
                )
                assert dual_score(stmt_id, activations, scrambled, passing) == before

        assert scrambled_cells > 0

    def test_scrambling_is_visible_without_truncation(self):
        failing = ExecutionTrace.from_sets([{0}, set(), set()], 1)
        noisy = ExecutionTrace.from_sets([{0}, {0}, {0}], 1)
        activations = [activated_at(0)]
        assert dual_score(0, activations, [failing]) == dual_score(0, activations, [noisy])
        kept = TruncationLevel.NONE
        assert dual_score(0, activations, [failing], truncation=kept) == SuspicionScore(1, 0)
        assert dual_score(0, activations, [noisy], truncation=kept) == SuspicionScore(1, 2)
