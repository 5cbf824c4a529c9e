"""Tests for mutant enumeration, seeding and ground-truth activation."""

import pytest

from src.bench.manifest import Mutation, load_manifest
from src.bench.seeding import (
    SeededMutant,
    enumerate_mutants,
    materialize_corpus,
    seed_mutants,
    true_activation_cycle,
    written_signals,
)
from tests.conftest import CORPUS_DIR, F1_BUG_LINE

SHIFTER = """module sh (
    input clk,
    input [3:0] a,
    output [3:0] y
);
    reg [3:0] r;
    always @(posedge clk)
        r <= (a << 1) + 4'd3;
    assign y = r;
endmodule
"""


class TestEnumerateMutants:
    def test_expression_tokens_on_statement_lines(self, build):
        mutants = enumerate_mutants(build(SHIFTER))
        assert mutants == [
            ("wrong_shift_direction", Mutation(8, "<<", ">>", 17)),
            ("wrong_constant", Mutation(8, "1", "2", 20)),
            ("wrong_operator", Mutation(8, "+", "-", 23)),
            ("wrong_constant", Mutation(8, "4'd3", "4'd4", 25)),
        ]

    def test_operator_filter(self, build):
        mutants = enumerate_mutants(build(SHIFTER), ["wrong_constant"])
        assert [m.replacement for _, m in mutants] == ["2", "4'd4"]

    def test_unknown_operator(self, build):
        with pytest.raises(ValueError, match="unknown mutation operators"):
            enumerate_mutants(build(SHIFTER), ["flip_everything"])

    def test_mutants_apply_cleanly(self, build):
        design = build(SHIFTER)
        for _, mutation in enumerate_mutants(design):
            mutated = mutation.apply(design.source)
            assert mutated.splitlines()[7] != design.source.splitlines()[7]

    def test_branch_targets_swap_same_width_parameters(self, f1_reference):
        mutants = enumerate_mutants(f1_reference)
        assert [(op, m.line, m.original, m.replacement) for op, m in mutants] == [
            ("wrong_branch_target", 20, "S0", "S1"),
            ("wrong_branch_target", 23, "S1", "S2"),
            ("wrong_branch_target", 23, "S0", "S1"),
            ("wrong_branch_target", 24, "S0", "S1"),
            ("wrong_operator", 28, "==", "!="),
            ("wrong_branch_target", 28, "S1", "S2"),
        ]


class TestSeedMutants:
    def test_keeps_detected_mutants(self, f1_reference, f1_tests):
        kept = seed_mutants(f1_reference, f1_tests)
        assert [(m.line, m.first_fail_cycle, m.true_activation_cycle) for m in kept] == [
            (20, 1, 0),
            (23, 2, 1),
            (28, 0, 0),
            (28, 2, 2),
        ]
        assert [m.operator for m in kept] == [
            "wrong_branch_target",
            "wrong_branch_target",
            "wrong_operator",
            "wrong_branch_target",
        ]

    def test_limit(self, f1_reference, f1_tests):
        assert len(seed_mutants(f1_reference, f1_tests, limit=2)) == 2

    def test_to_entry(self):
        mutant = SeededMutant("wrong_operator", Mutation(28, "==", "!=", 24), 0, 0)
        entry = mutant.to_entry("f1_eq", "medium", "designs/fsm_f1.v", "stimuli/fsm_f1.json")
        assert entry == {
            "id": "f1_eq",
            "category": "medium",
            "design": "designs/fsm_f1.v",
            "stimulus": "stimuli/fsm_f1.json",
            "mutation": {"line": 28, "original": "==", "replacement": "!=", "column": 24},
            "ground_truth_line": 28,
            "operator": "wrong_operator",
            "true_activation_cycle": 0,
        }
        assert "true_activation_cycle" not in SeededMutant(
            "wrong_operator", Mutation(1, "a", "b"), 3, None
        ).to_entry("x", "easy", "d.v", "s.json")


class TestGroundTruth:
    def test_written_signals(self, f1_buggy):
        assert written_signals(f1_buggy, F1_BUG_LINE) == {"next_state"}
        assert written_signals(f1_buggy, 16) == {"state"}
        assert written_signals(f1_buggy, 22) == {"next_state"}
        assert written_signals(f1_buggy, 11) == set()

    def test_fsm_bug_activates_one_cycle_before_failing(self, f1_reference, f1_buggy, f1_tests):
        cycle = true_activation_cycle(f1_reference, f1_buggy, f1_tests[0], F1_BUG_LINE)
        assert cycle == 1

    def test_identical_designs_never_diverge(self, f1_reference, f1_tests):
        assert true_activation_cycle(f1_reference, f1_reference, f1_tests[0], 20) is None


class TestMaterializeCorpus:
    def test_writes_mutated_entries(self, tmp_path):
        manifest = load_manifest(CORPUS_DIR / "corpus.json")
        written = materialize_corpus(manifest, tmp_path / "out")
        assert len(written) == 25
        assert "fsm_f1_s0_target" not in written
        entry = next(e for e in manifest if e.id == "alu_sub")
        assert written["alu_sub"].read_text(encoding="utf-8") == entry.buggy_source()
