"""
Signal classification by declaration and assignment context.

A non-port signal is a Register iff it is assigned inside an edge-sensitive
always block, independent of `=` vs `<=`; otherwise it is Combinational.
"""

from dataclasses import dataclass, field
from enum import Enum

from src.errors import MixedDriver, MultiDriver, SourcePos
from src.frontend.ast_nodes import AlwaysBlock, Assignment, ContinuousAssign, DesignAst, walk_statements
from src.utils.logger import get_logger

logger = get_logger(__name__)


class SignalClass(str, Enum):
    INPUT = "Input"
    OUTPUT = "Output"
    REGISTER = "Register"
    COMBINATIONAL = "Combinational"


@dataclass(frozen=True)
class SignalClassMap:
    """
    Total signal classification of one design.

    Attributes:
        classes: Signal name -> class
        registered_outputs: Output ports assigned in edge-sensitive blocks
    """

    classes: dict[str, SignalClass]
    registered_outputs: frozenset[str] = field(default_factory=frozenset)

    def __getitem__(self, name: str) -> SignalClass:
        return self.classes[name]

    def __contains__(self, name: object) -> bool:
        return name in self.classes

    def is_state(self, name: str) -> bool:
        """True for signals that hold a value across clock edges"""
        return self.classes[name] is SignalClass.REGISTER or name in self.registered_outputs

    def of_class(self, cls: SignalClass) -> list[str]:
        return sorted(name for name, c in self.classes.items() if c is cls)

    @property
    def registers(self) -> list[str]:
        return self.of_class(SignalClass.REGISTER)

    @property
    def state_signals(self) -> list[str]:
        return sorted(name for name in self.classes if self.is_state(name))


@dataclass(frozen=True)
class _Driver:
    context: str  # edge | comb | continuous
    block_id: int
    pos: SourcePos


def classify_signals(ast: DesignAst) -> SignalClassMap:
    """
    Classify every declared signal.

    Args:
        ast: Parsed design

    Returns:
        SignalClassMap covering every declared signal

    Raises:
        MixedDriver: Signal assigned in edge-sensitive and combinational contexts
        MultiDriver: Signal driven by more than one construct, or input driven
    """
    drivers: dict[str, list[_Driver]] = {}

    for block_id, item in enumerate(ast.items):
        if isinstance(item, ContinuousAssign):
            drivers.setdefault(item.target.name, []).append(
                _Driver("continuous", block_id, item.target.pos)
            )
        elif isinstance(item, AlwaysBlock):
            context = "edge" if item.clock is not None else "comb"
            seen: set[str] = set()
            for stmt in walk_statements(item.body):
                if isinstance(stmt, Assignment) and stmt.target.name not in seen:
                    seen.add(stmt.target.name)
                    drivers.setdefault(stmt.target.name, []).append(
                        _Driver(context, block_id, stmt.target.pos)
                    )

    classes: dict[str, SignalClass] = {}
    registered_outputs: set[str] = set()

    for name, decl in ast.signals.items():
        driven_by = drivers.get(name, [])

        if decl.direction == "input" and driven_by:
            raise MultiDriver(f"input port '{name}' is driven", driven_by[0].pos, ast.filename)

        contexts = {d.context for d in driven_by}
        if "edge" in contexts and len(contexts) > 1:
            offender = next(d for d in driven_by if d.context != "edge")
            raise MixedDriver(
                f"'{name}' is assigned in both edge-sensitive and combinational contexts",
                offender.pos,
                ast.filename,
            )
        if len({d.block_id for d in driven_by}) > 1:
            raise MultiDriver(f"'{name}' has more than one driver", driven_by[1].pos, ast.filename)

        edge_driven = contexts == {"edge"}
        if decl.direction == "input":
            classes[name] = SignalClass.INPUT
        elif decl.direction == "output":
            classes[name] = SignalClass.OUTPUT
            if edge_driven:
                registered_outputs.add(name)
        elif edge_driven:
            classes[name] = SignalClass.REGISTER
        else:
            classes[name] = SignalClass.COMBINATIONAL

    result = SignalClassMap(classes, frozenset(registered_outputs))
    logger.debug(
        "signals_classified",
        file=ast.filename,
        registers=len(result.registers),
        registered_outputs=len(registered_outputs),
    )
    return result
