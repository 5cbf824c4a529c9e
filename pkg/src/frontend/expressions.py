"""
Expression helpers shared by the parser, the PDG builder and the simulator.

Widths and values follow unsigned two-state Verilog rules:
- `+ - * & | ^ ~`, unary minus, `?:` branches and shift left-hand sides are
  context-determined (evaluated at the widest width in the expression context)
- comparison operands, shift amounts, concatenation parts, conditions and
  indices are self-determined
- comparisons, logical and reduction operators yield a single bit
"""

from collections.abc import Callable, Iterator, Mapping

from src.frontend.ast_nodes import (
    BinaryOp,
    BitSelect,
    Concat,
    Expr,
    Identifier,
    Number,
    PartSelect,
    Ternary,
    UnaryOp,
)

ARITHMETIC_OPS = frozenset({"+", "-", "*", "&", "|", "^"})
COMPARISON_OPS = frozenset({"==", "!=", "===", "!==", "<", "<=", ">", ">="})
LOGICAL_OPS = frozenset({"&&", "||"})
SHIFT_OPS = frozenset({"<<", ">>"})
REDUCTION_OPS = frozenset({"&", "|", "^"})

Reader = Callable[[str], int]


def mask(width: int) -> int:
    return (1 << width) - 1


def _walk(expr: Expr) -> Iterator[Expr]:
    yield expr
    if isinstance(expr, UnaryOp):
        yield from _walk(expr.operand)
    elif isinstance(expr, BinaryOp):
        yield from _walk(expr.left)
        yield from _walk(expr.right)
    elif isinstance(expr, Ternary):
        yield from _walk(expr.cond)
        yield from _walk(expr.if_true)
        yield from _walk(expr.if_false)
    elif isinstance(expr, Concat):
        for part in expr.parts:
            yield from _walk(part)
    elif isinstance(expr, BitSelect):
        yield from _walk(expr.index)


def free_identifiers(expr: Expr) -> list[str]:
    """
    Signal names referenced by an expression, in first-occurrence order.

    Args:
        expr: Expression tree

    Returns:
        Distinct names (selects contribute their base signal)
    """
    names: dict[str, None] = {}
    for node in _walk(expr):
        if isinstance(node, (Identifier, BitSelect, PartSelect)):
            names.setdefault(node.name, None)
    return list(names)


def identifier_nodes(expr: Expr) -> list[Identifier | BitSelect | PartSelect]:
    """Every signal-referencing node of an expression (for position reporting)"""
    return [n for n in _walk(expr) if isinstance(n, (Identifier, BitSelect, PartSelect))]


def self_width(expr: Expr, widths: Mapping[str, int]) -> int:
    """
    Self-determined width of an expression.

    Args:
        expr: Expression tree
        widths: Declared width per signal name

    Returns:
        Width in bits
    """
    if isinstance(expr, Identifier):
        return widths[expr.name]
    if isinstance(expr, Number):
        return expr.width
    if isinstance(expr, UnaryOp):
        if expr.op in ("~", "-", "+"):
            return self_width(expr.operand, widths)
        return 1
    if isinstance(expr, BinaryOp):
        if expr.op in ARITHMETIC_OPS:
            return max(self_width(expr.left, widths), self_width(expr.right, widths))
        if expr.op in SHIFT_OPS:
            return self_width(expr.left, widths)
        return 1
    if isinstance(expr, Ternary):
        return max(self_width(expr.if_true, widths), self_width(expr.if_false, widths))
    if isinstance(expr, Concat):
        return sum(self_width(part, widths) for part in expr.parts)
    if isinstance(expr, BitSelect):
        return 1
    if isinstance(expr, PartSelect):
        return expr.msb - expr.lsb + 1
    raise TypeError(f"not an expression: {expr!r}")


def evaluate(
    expr: Expr,
    read: Reader,
    widths: Mapping[str, int],
    context_width: int = 0,
) -> int:
    """
    Evaluate an expression to an unsigned integer.

    Args:
        expr: Expression tree
        read: Current value of a signal by name
        widths: Declared width per signal name
        context_width: Width imposed by the surrounding context (assignment
            target or enclosing context-determined operator)

    Returns:
        Value masked to max(self width, context width)
    """
    width = max(self_width(expr, widths), context_width)

    if isinstance(expr, Identifier):
        return read(expr.name) & mask(width)

    if isinstance(expr, Number):
        return expr.value & mask(width)

    if isinstance(expr, UnaryOp):
        if expr.op == "~":
            return ~evaluate(expr.operand, read, widths, width) & mask(width)
        if expr.op == "-":
            return -evaluate(expr.operand, read, widths, width) & mask(width)
        if expr.op == "+":
            return evaluate(expr.operand, read, widths, width)

        operand_width = self_width(expr.operand, widths)
        value = evaluate(expr.operand, read, widths)
        if expr.op == "!":
            return int(value == 0)
        if expr.op == "&":
            return int(value == mask(operand_width))
        if expr.op == "|":
            return int(value != 0)
        if expr.op == "^":
            return bin(value).count("1") & 1
        raise ValueError(f"unknown unary operator {expr.op!r}")

    if isinstance(expr, BinaryOp):
        op = expr.op
        if op in ARITHMETIC_OPS:
            left = evaluate(expr.left, read, widths, width)
            right = evaluate(expr.right, read, widths, width)
            if op == "+":
                result = left + right
            elif op == "-":
                result = left - right
            elif op == "*":
                result = left * right
            elif op == "&":
                result = left & right
            elif op == "|":
                result = left | right
            else:
                result = left ^ right
            return result & mask(width)

        if op in SHIFT_OPS:
            left = evaluate(expr.left, read, widths, width)
            amount = evaluate(expr.right, read, widths)
            if amount >= width:
                return 0
            result = left << amount if op == "<<" else left >> amount
            return result & mask(width)

        if op in COMPARISON_OPS:
            operand_width = max(self_width(expr.left, widths), self_width(expr.right, widths))
            left = evaluate(expr.left, read, widths, operand_width)
            right = evaluate(expr.right, read, widths, operand_width)
            if op in ("==", "==="):
                return int(left == right)
            if op in ("!=", "!=="):
                return int(left != right)
            if op == "<":
                return int(left < right)
            if op == "<=":
                return int(left <= right)
            if op == ">":
                return int(left > right)
            return int(left >= right)

        if op in LOGICAL_OPS:
            left_true = evaluate(expr.left, read, widths) != 0
            right_true = evaluate(expr.right, read, widths) != 0
            if op == "&&":
                return int(left_true and right_true)
            return int(left_true or right_true)

        raise ValueError(f"unknown binary operator {op!r}")

    if isinstance(expr, Ternary):
        if evaluate(expr.cond, read, widths) != 0:
            return evaluate(expr.if_true, read, widths, width)
        return evaluate(expr.if_false, read, widths, width)

    if isinstance(expr, Concat):
        result = 0
        for part in expr.parts:
            part_width = self_width(part, widths)
            result = (result << part_width) | evaluate(part, read, widths)
        return result & mask(width)

    if isinstance(expr, BitSelect):
        index = evaluate(expr.index, read, widths)
        # Out-of-range indices read as 0 (two-state stand-in for x)
        if index >= widths[expr.name]:
            return 0
        return (read(expr.name) >> index) & 1

    if isinstance(expr, PartSelect):
        return (read(expr.name) >> expr.lsb) & mask(expr.msb - expr.lsb + 1)

    raise TypeError(f"not an expression: {expr!r}")


def _no_signals(name: str) -> int:
    raise KeyError(name)


def const_value(expr: Expr) -> int:
    """
    Value of a constant expression (numbers and folded parameters only).

    Raises:
        KeyError: If the expression references a signal
    """
    return evaluate(expr, _no_signals, {})


def is_constant(expr: Expr) -> bool:
    return not free_identifiers(expr)
