"""Tests for the dependency graph and its DOT export."""

from src.pdg.dot_export import export_dot
from src.pdg.graph import EdgeKind, SignalNode, StatementNode
from tests.conftest import (
    F1_CASE,
    F1_OUT_ASSIGN,
    F1_RESET_ASSIGN,
    F1_RESET_IF,
    F1_S0_ARM,
    F1_S1_ARM,
    F1_STATE_UPDATE,
)


def s(stmt_id: int) -> StatementNode:
    return StatementNode(stmt_id)


def sig(name: str) -> SignalNode:
    return SignalNode(name)


class TestPdgStructure:
    """Nodes, edges and delays of the two-state FSM graph."""

    def test_every_statement_and_signal_is_a_node(self, f1_buggy):
        pdg = f1_buggy.pdg
        assert pdg.stmt_count == 7
        assert [n.name for n in pdg.signal_nodes] == sorted(
            ["clk", "rst", "in", "out", "state", "next_state"]
        )
        assert pdg.outputs == [sig("out")]

    def test_control_edges(self, f1_buggy):
        assert f1_buggy.pdg.edges_of(EdgeKind.CONTROL) == [
            (s(F1_RESET_IF), s(F1_RESET_ASSIGN)),
            (s(F1_RESET_IF), s(F1_CASE)),
            (s(F1_CASE), s(F1_S0_ARM)),
            (s(F1_CASE), s(F1_S1_ARM)),
        ]

    def test_data_edges_through_assignments(self, f1_buggy):
        pdg = f1_buggy.pdg
        assert pdg.has_edge(sig("next_state"), s(F1_STATE_UPDATE), EdgeKind.DATA)
        assert pdg.has_edge(s(F1_STATE_UPDATE), sig("state"), EdgeKind.DATA)
        assert pdg.has_edge(sig("in"), s(F1_S0_ARM), EdgeKind.DATA)
        assert pdg.has_edge(s(F1_OUT_ASSIGN), sig("out"), EdgeKind.DATA)
        assert not pdg.has_edge(s(F1_RESET_IF), s(F1_CASE), EdgeKind.DATA)

    def test_enclosing_conditions_feed_nested_statements(self, f1_buggy):
        pdg = f1_buggy.pdg
        assert pdg.has_edge(sig("rst"), s(F1_S0_ARM), EdgeKind.DATA)
        assert pdg.has_edge(sig("state"), s(F1_S0_ARM), EdgeKind.DATA)
        assert pdg.data_predecessors(s(F1_S0_ARM)) == [sig("in"), sig("rst"), sig("state")]

    def test_branches_write_their_body_targets(self, f1_buggy):
        pdg = f1_buggy.pdg
        assert pdg.has_edge(s(F1_RESET_IF), sig("next_state"), EdgeKind.DATA)
        assert pdg.has_edge(s(F1_CASE), sig("next_state"), EdgeKind.DATA)
        assert pdg.data_predecessors(sig("next_state")) == [
            s(F1_RESET_IF),
            s(F1_RESET_ASSIGN),
            s(F1_CASE),
            s(F1_S0_ARM),
            s(F1_S1_ARM),
        ]

    def test_only_state_signals_carry_a_delay(self, f1_buggy):
        pdg = f1_buggy.pdg
        assert pdg.delay(sig("state")) == 1
        for name in ("next_state", "out", "in", "rst", "clk"):
            assert pdg.delay(sig(name)) == 0
        assert all(pdg.delay(n) == 0 for n in pdg.statement_nodes)

    def test_clock_has_no_edges(self, f1_buggy):
        assert f1_buggy.pdg.graph.degree(sig("clk")) == 0

    def test_data_graph_drops_control_edges(self, f1_buggy):
        data = f1_buggy.pdg.data_graph()
        assert not data.has_edge(s(F1_CASE), s(F1_S0_ARM))
        assert data.has_edge(sig("in"), s(F1_S0_ARM))

    def test_registered_output_is_delayed(self, build):
        design = build(
            """
            module m (input clk, input a, output reg q);
                always @(posedge clk) q <= a;
            endmodule
            """
        )
        assert design.pdg.delay(sig("q")) == 1


class TestDotExport:
    def test_statement_boxes_and_signal_labels(self, f1_buggy):
        dot = export_dot(f1_buggy.pdg, f1_buggy.name)
        assert dot.startswith("digraph fsm_f1 {")
        assert "s4 [label=s4 shape=box]" in dot
        assert 'label="state (Register)"' in dot
        assert 'label="next_state (Combinational)"' in dot

    def test_delay_attribute_only_on_state_signals(self, f1_buggy):
        lines = [l.strip() for l in export_dot(f1_buggy.pdg).splitlines()]
        assert "state [delay=1]" in lines
        assert [l for l in lines if "delay" in l] == ["state [delay=1]"]

    def test_control_edges_are_dashed(self, f1_buggy):
        dot = export_dot(f1_buggy.pdg)
        assert "s3 -> s4 [style=dashed]" in dot
        assert "in -> s4\n" in dot

    def test_output_is_deterministic(self, f1_buggy):
        assert export_dot(f1_buggy.pdg) == export_dot(f1_buggy.pdg)

    def test_signal_named_like_a_statement_is_renamed(self, build):
        design = build("module m (input s0, output y); assign y = s0; endmodule")
        dot = export_dot(design.pdg)
        assert "sig_s0 -> s0" in dot
