"""
Design bundle: source text plus every static artifact derived from it.
"""

from dataclasses import dataclass
from pathlib import Path

from src.errors import LexError
from src.frontend.ast_nodes import DesignAst
from src.frontend.lexer import tokenize
from src.frontend.parser import parse_design
from src.frontend.statements import StatementTable, enumerate_statements
from src.pdg.classifier import SignalClassMap, classify_signals
from src.pdg.graph import Pdg, build_pdg
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Design:
    """Parsed, classified design with its PDG. Immutable and shareable."""

    filename: str
    source: str
    ast: DesignAst
    statements: StatementTable
    classes: SignalClassMap
    pdg: Pdg

    @property
    def name(self) -> str:
        return self.ast.module_name

    def location(self, stmt_id: int) -> str:
        """`file:line` of a statement"""
        return f"{self.filename}:{self.statements[stmt_id].line}"


def parse_source(text: str, filename: str = "<input>") -> Design:
    """
    Run the static front half of the pipeline on source text.

    Args:
        text: Verilog source
        filename: Name used in error messages and locations

    Returns:
        Design bundle

    Raises:
        HdlError: On lexical, syntactic, semantic or driver errors
    """
    ast = parse_design(tokenize(text, filename), filename)
    statements = enumerate_statements(ast)
    classes = classify_signals(ast)
    pdg = build_pdg(ast, classes, statements)
    return Design(filename, text, ast, statements, classes, pdg)


def load_design(path: str | Path) -> Design:
    """
    Read and analyze a `.v` file.

    Args:
        path: Path to the design file

    Returns:
        Design bundle (filename is the path as given)

    Raises:
        HdlError: The file is not UTF-8 text, or any parse_source failure
    """
    path = Path(path)
    logger.debug("loading_design", path=str(path))
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise LexError(f"not UTF-8 text ({e.reason})", filename=str(path)) from None
    return parse_source(text, str(path))
