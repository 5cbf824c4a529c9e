"""Tests for activation cycles and trace pruning."""

import pytest

from src.analysis.empc import INFINITY, EmpcMap, compute_empc
from src.localization.activation import Exclusion, activation_cycle, observation_only
from src.localization.pruning import TruncationLevel, prune_trace, retained_stop
from src.pdg.graph import SignalNode, StatementNode
from src.traces.model import ExecutionTrace


class TestActivationCycle:
    @pytest.fixture
    def activations(self):
        empc = EmpcMap(
            {
                StatementNode(0): 0,
                StatementNode(1): 3,
                StatementNode(2): INFINITY,
                StatementNode(3): 2,
                SignalNode("y"): 0,
            }
        )
        return activation_cycle(empc, c_obs=2)

    def test_finite_empc_subtracts_from_the_observation(self, activations):
        assert activations.c_act(0) == 2
        assert activations.c_act(3) == 0
        assert not activations[3].excluded

    def test_exclusions(self, activations):
        assert activations.exclusion(1) is Exclusion.NEGATIVE_CYCLE
        assert activations.exclusion(2) is Exclusion.EMPC_INFINITE
        assert activations.c_act(1) is None
        assert activations[2].excluded

    def test_covers_statements_only(self, activations):
        assert len(activations) == 4
        assert [a.stmt_id for a in activations] == [0, 1, 2, 3]
        assert activations.c_obs == 2

    def test_observation_only_pins_every_statement(self):
        activations = observation_only(range(3), 5)
        assert [a.c_act for a in activations] == [5, 5, 5]
        assert all(not a.excluded for a in activations)

    def test_fsm_bug_is_placed_at_its_true_activation(self, f1_buggy, f1_run):
        empc = compute_empc(f1_buggy.pdg, f1_run.trace, f1_run.results)
        activations = activation_cycle(empc, f1_run.first_fail_cycle)
        assert activations.c_act(4) == 1
        assert activations.c_act(6) == 2
        assert activations.exclusion(5) is Exclusion.EMPC_INFINITE


class TestPruning:
    @pytest.mark.parametrize(
        "c_act, length, level, stop",
        [
            (1, 10, TruncationLevel.FULL, 2),
            (1, 10, TruncationLevel.HALF, 6),
            (1, 10, TruncationLevel.NONE, 10),
            (9, 10, TruncationLevel.HALF, 10),
            (0, 1, TruncationLevel.FULL, 1),
            (2, 6, TruncationLevel.HALF, 4),
        ],
    )
    def test_retained_stop(self, c_act, length, level, stop):
        assert retained_stop(c_act, length, level) == stop

    @pytest.mark.parametrize("c_act", [-1, 4])
    def test_activation_outside_the_trace(self, c_act):
        with pytest.raises(ValueError, match="outside trace"):
            retained_stop(c_act, 4, TruncationLevel.FULL)

    def test_prune_trace_keeps_a_prefix(self):
        trace = ExecutionTrace.from_sets([{0}, {1}, {0, 1}, {1}], 2)
        pruned = prune_trace(trace, 1)
        assert len(pruned) == 2
        assert pruned.cycles_of(0) == [0]
        assert len(prune_trace(trace, 1, TruncationLevel.NONE)) == 4
