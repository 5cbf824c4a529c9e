"""Tests for the parser and its semantic checks."""

import pytest

from src.design import load_design
from src.errors import HdlSemanticError, LexError, ParseError, UnsupportedConstruct
from src.frontend.ast_nodes import (
    AlwaysBlock,
    Assignment,
    BlockKind,
    CaseStatement,
    ContinuousAssign,
    IfStatement,
    Number,
)
from src.frontend.lexer import tokenize
from src.frontend.parser import parse_design


def parse(text: str):
    return parse_design(tokenize(text, "t.v"), "t.v")


COUNTER = """
module counter (
    input clk,
    input rst,
    output [3:0] q
);
    reg [3:0] cnt;
    always @(posedge clk) begin
        if (rst)
            cnt <= 4'd0;
        else
            cnt <= cnt + 4'd1;
    end
    assign q = cnt;
endmodule
"""


class TestModuleStructure:
    """Ports, declarations and module items."""

    def test_ansi_ports(self):
        ast = parse(COUNTER)
        assert ast.module_name == "counter"
        assert ast.ports == ["clk", "rst", "q"]
        assert ast.inputs == ["clk", "rst"]
        assert ast.outputs == ["q"]
        assert ast.width_of("q") == 4
        assert ast.width_of("cnt") == 4
        assert ast.clock == "clk"

    def test_items_in_source_order(self):
        ast = parse(COUNTER)
        assert [type(item) for item in ast.items] == [AlwaysBlock, ContinuousAssign]
        block = ast.items[0]
        assert block.kind is BlockKind.EDGE
        assert block.edge == "posedge"
        assert isinstance(block.body[0], IfStatement)

    def test_non_ansi_ports_merge_with_reg(self):
        ast = parse(
            """
            module m (clk, y);
                input clk;
                output y;
                reg y;
                always @(posedge clk) y <= ~y;
            endmodule
            """
        )
        decl = ast.signals["y"]
        assert decl.direction == "output"
        assert decl.is_reg

    def test_localparam_takes_literal_width(self):
        ast = parse(
            """
            module m (input a, output y);
                localparam IDLE = 2'd2;
                localparam [3:0] WIDE = 1;
                assign y = a;
            endmodule
            """
        )
        assert (ast.parameters["IDLE"].value, ast.parameters["IDLE"].width) == (2, 2)
        assert ast.parameters["WIDE"].width == 4

    def test_parameter_references_fold_to_numbers(self):
        ast = parse(
            """
            module m (input [1:0] s, output y);
                localparam GO = 2'd1;
                assign y = (s == GO);
            endmodule
            """
        )
        right = ast.items[0].expr.right
        assert isinstance(right, Number)
        assert (right.value, right.width, right.sized) == (1, 2, True)

    def test_case_with_default(self):
        ast = parse(
            """
            module m (input [1:0] s, output [1:0] y);
                reg [1:0] r;
                always @(*) begin
                    case (s)
                        2'd0, 2'd1: r = 2'd1;
                        default: r = 2'd0;
                    endcase
                end
                assign y = r;
            endmodule
            """
        )
        case = ast.items[0].body[0]
        assert isinstance(case, CaseStatement)
        assert len(case.items[0].labels) == 2
        assert case.default is case.items[1]

    def test_wire_initializer_becomes_continuous_assign(self):
        ast = parse(
            """
            module m (input a, output y);
                wire w = ~a;
                assign y = w;
            endmodule
            """
        )
        assert [item.target.name for item in ast.items] == ["w", "y"]

    def test_explicit_level_sensitivity_is_combinational(self):
        ast = parse(
            """
            module m (input a, input b, output y);
                reg r;
                always @(a or b) r = a & b;
                assign y = r;
            endmodule
            """
        )
        assert ast.items[0].kind is BlockKind.COMB

    def test_assignment_spans_its_line(self):
        ast = parse(COUNTER)
        reset = ast.items[0].body[0].then_body[0]
        assert isinstance(reset, Assignment)
        assert not reset.blocking
        assert reset.span.line == 10


class TestRejections:
    """Syntax errors, unsupported constructs and semantic errors."""

    def test_missing_semicolon(self):
        with pytest.raises(ParseError) as exc:
            parse("module m (input a, output y) assign y = a; endmodule")
        assert "t.v:1:30" in str(exc.value)
        assert ";" in exc.value.expected

    def test_unexpected_end_of_input(self):
        with pytest.raises(ParseError, match="unexpected end of input"):
            parse("module m (input a, output y);")

    @pytest.mark.parametrize(
        "body, message",
        [
            ("initial y = 0;", "'initial' is not supported"),
            ("sub u0 (a, y);", "module instantiation"),
            ("assign #1 y = a;", "delays"),
            ("assign y = a / 2;", "division"),
            ("assign y = a >>> 1;", "arithmetic shifts"),
            ("assign y = {2{a}};", "replication"),
            ("reg [3:1] r;", "ranges must end at bit 0"),
            ("reg mem [0:3];", "memories"),
        ],
    )
    def test_unsupported(self, body, message):
        with pytest.raises(UnsupportedConstruct, match=message):
            parse(f"module m (input a, output y); {body} endmodule")

    def test_multiple_modules(self):
        with pytest.raises(UnsupportedConstruct, match="multiple modules"):
            parse(
                "module a (input x, output y); assign y = x; endmodule\n"
                "module b (input x, output y); assign y = x; endmodule"
            )

    @pytest.mark.parametrize(
        "body, message",
        [
            ("assign y = b;", "undeclared identifier 'b'"),
            ("reg r; assign r = a;", "continuous assignment to reg"),
            ("wire w; always @(*) w = a; assign y = w;", "procedural assignment to wire"),
            ("wire a2; wire a2;", "duplicate declaration"),
            ("reg r; always @(posedge r) r <= a; assign y = r;", "must be an input port"),
            ("assign y = a[3];", "out of range"),
        ],
    )
    def test_semantic(self, body, message):
        with pytest.raises(HdlSemanticError, match=message):
            parse(f"module m (input a, output y); {body} endmodule")

    def test_two_clocks(self):
        with pytest.raises(HdlSemanticError, match="multiple clocks"):
            parse(
                """
                module m (input c1, input c2, output y);
                    reg a;
                    reg b;
                    always @(posedge c1) a <= ~a;
                    always @(posedge c2) b <= ~b;
                    assign y = a ^ b;
                endmodule
                """
            )

    def test_mixed_edge_and_level_sensitivity(self):
        with pytest.raises(UnsupportedConstruct, match="mixed edge and level"):
            parse(
                """
                module m (input clk, input a, output y);
                    reg r;
                    always @(posedge clk or a) r <= a;
                    assign y = r;
                endmodule
                """
            )

    def test_design_file_must_be_utf8(self, tmp_path):
        path = tmp_path / "latin1.v"
        path.write_bytes(b"// caf\xe9\nmodule m (input a, output y); assign y = a; endmodule\n")
        with pytest.raises(LexError, match="not UTF-8 text") as exc:
            load_design(path)
        assert exc.value.filename == str(path)
