"""Tests for statement enumeration."""

from src.frontend.statements import StatementContext, StatementKind
from tests.conftest import (
    F1_CASE,
    F1_OUT_ASSIGN,
    F1_RESET_ASSIGN,
    F1_RESET_IF,
    F1_S0_ARM,
    F1_S1_ARM,
    F1_STATE_UPDATE,
)


class TestStatementTable:
    """Ids, nesting and lookups on the two-state FSM."""

    def test_ids_follow_source_order(self, f1_buggy):
        table = f1_buggy.statements
        assert len(table) == 7
        assert [e.line for e in table] == [16, 19, 20, 22, 23, 24, 28]
        assert [e.stmt_id for e in table] == list(range(7))

    def test_kinds_and_contexts(self, f1_buggy):
        table = f1_buggy.statements
        assert table[F1_RESET_IF].kind is StatementKind.IF
        assert table[F1_CASE].kind is StatementKind.CASE
        assert table[F1_S0_ARM].kind is StatementKind.ASSIGN
        assert table[F1_STATE_UPDATE].context is StatementContext.EDGE
        assert table[F1_S0_ARM].context is StatementContext.COMB
        assert table[F1_OUT_ASSIGN].context is StatementContext.CONTINUOUS

    def test_blocking_flag(self, f1_buggy):
        table = f1_buggy.statements
        assert table[F1_STATE_UPDATE].blocking is False
        assert table[F1_S0_ARM].blocking is True
        assert table[F1_OUT_ASSIGN].blocking is None

    def test_nesting(self, f1_buggy):
        table = f1_buggy.statements
        assert table[F1_S0_ARM].depth == 2
        assert table[F1_S0_ARM].parent == F1_CASE
        assert table.ancestors(F1_S0_ARM) == [F1_CASE, F1_RESET_IF]
        assert table.children(F1_CASE) == [F1_S0_ARM, F1_S1_ARM]
        assert table.descendants(F1_RESET_IF) == [F1_RESET_ASSIGN, F1_CASE, F1_S0_ARM, F1_S1_ARM]
        assert table.body_writes(F1_RESET_IF) == ["next_state"]

    def test_reads_and_writes(self, f1_buggy):
        table = f1_buggy.statements
        assert table[F1_RESET_IF].reads == ("rst",)
        assert table[F1_CASE].reads == ("state",)
        assert table[F1_S0_ARM].reads == ("in",)
        assert table[F1_S0_ARM].written == "next_state"
        assert table[F1_RESET_IF].written is None

    def test_lookups(self, f1_buggy):
        table = f1_buggy.statements
        assert [e.stmt_id for e in table.at_line(23)] == [F1_S0_ARM]
        assert table.at_line(21) == []
        node = table[F1_S1_ARM].node
        assert table.id_of(node) == F1_S1_ARM
        assert f1_buggy.location(F1_S0_ARM).endswith("fsm_f1_buggy.v:23")

    def test_case_labels_count_as_reads(self, build):
        design = build(
            """
            module m (input [1:0] s, input [1:0] k, output y);
                reg r;
                always @(*) begin
                    case (s)
                        k: r = 1'b1;
                        default: r = 1'b0;
                    endcase
                end
                assign y = r;
            endmodule
            """
        )
        assert design.statements[0].reads == ("s", "k")

    def test_enumeration_is_stable(self, f1_buggy, build):
        again = build(f1_buggy.source, f1_buggy.filename)
        assert again.statements == f1_buggy.statements
