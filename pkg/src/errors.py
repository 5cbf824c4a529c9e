"""
Exception hierarchy for the toolchain.

HDL errors carry a source position and render as `file:line:col: message`;
everything else renders as its plain message.
"""

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class SourcePos:
    """Position of a character in a source file (1-based line/column)."""

    line: int
    column: int
    offset: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class PeckerError(Exception):
    """Base class for every error raised by the toolchain"""


# ============================================================================
# HDL front end
# ============================================================================


class HdlError(PeckerError):
    """Error anchored at a position in an HDL source file"""

    def __init__(
        self,
        message: str,
        pos: SourcePos | None = None,
        filename: str = "<input>",
    ) -> None:
        self.message = message
        self.pos = pos
        self.filename = filename
        super().__init__(self._render())

    def _render(self) -> str:
        if self.pos is None:
            return f"{self.filename}: {self.message}"
        return f"{self.filename}:{self.pos.line}:{self.pos.column}: {self.message}"


class LexError(HdlError):
    """Character outside the supported alphabet or malformed literal"""


class ParseError(HdlError):
    """Token stream does not match the grammar"""

    def __init__(
        self,
        message: str,
        pos: SourcePos | None = None,
        filename: str = "<input>",
        expected: frozenset[str] = frozenset(),
    ) -> None:
        self.expected = expected
        if expected:
            message = f"{message} (expected one of: {', '.join(sorted(expected))})"
        super().__init__(message, pos, filename)


class UnsupportedConstruct(HdlError):
    """Valid Verilog that lies outside the supported subset"""


class HdlSemanticError(HdlError):
    """Undeclared identifier, bad width, duplicate declaration or clocking error"""


class DriverError(HdlError):
    """Illegal combination of drivers for one signal"""


class MixedDriver(DriverError):
    """Signal assigned in both edge-sensitive and combinational contexts"""


class MultiDriver(DriverError):
    """Signal driven by more than one construct, or an input port driven"""


# ============================================================================
# Simulation
# ============================================================================


class SimulationError(PeckerError):
    """Error raised while elaborating or running a design"""

    def __init__(self, message: str, cycle: int | None = None) -> None:
        self.message = message
        self.cycle = cycle
        rendered = message if cycle is None else f"cycle {cycle}: {message}"
        super().__init__(rendered)

    def at_cycle(self, cycle: int) -> "SimulationError":
        """Return a copy of this error tagged with a cycle index"""
        if self.cycle is not None:
            return self
        return type(self)(self.message, cycle)


class CombinationalLoop(SimulationError):
    """Combinational dependencies form a cycle not broken by a register"""


class NonConvergence(SimulationError):
    """Combinational settle exceeded its iteration bound"""


class StimulusError(SimulationError):
    """Stimulus does not match the design's ports or widths"""


# ============================================================================
# Traces and analysis
# ============================================================================


class TraceFormatError(PeckerError):
    """Malformed trace file"""

    def __init__(self, message: str, line: int) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


FormatError = TraceFormatError


class BoundsError(TraceFormatError):
    """stmt_id outside the declared statement count"""


class NoFailure(PeckerError):
    """The run never fails, so there is nothing to localize"""


# ============================================================================
# Benchmarking
# ============================================================================


class EmptyCorpus(PeckerError):
    """A metric or corpus run was requested over zero bugs"""


class ManifestValidationError(PeckerError):
    """Raised when a corpus manifest fails validation"""

    def __init__(self, errors: list[str]) -> None:
        self.errors = errors
        super().__init__(f"Manifest validation failed with {len(errors)} error(s)")
