"""Hardware program dependency graph: signal classes, graph, DOT export."""

from src.pdg.classifier import SignalClass, SignalClassMap, classify_signals
from src.pdg.dot_export import export_dot
from src.pdg.graph import EdgeKind, Pdg, SignalNode, StatementNode, build_pdg

__all__ = [
    "SignalClass",
    "SignalClassMap",
    "classify_signals",
    "EdgeKind",
    "Pdg",
    "SignalNode",
    "StatementNode",
    "build_pdg",
    "export_dot",
]
