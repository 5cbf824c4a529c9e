"""
Hardware program dependency graph.

Nodes are statements and signals. Control edges run parent branch -> nested
statement; data edges run read signal -> statement and statement -> written
signal. Registers (and registered outputs) are explicit delay-1 nodes; every
other node has delay 0.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Union

import networkx as nx

from src.frontend.ast_nodes import DesignAst
from src.frontend.statements import StatementTable
from src.pdg.classifier import SignalClass, SignalClassMap
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, order=True)
class StatementNode:
    stmt_id: int

    def __str__(self) -> str:
        return f"s{self.stmt_id}"


@dataclass(frozen=True, order=True)
class SignalNode:
    name: str

    def __str__(self) -> str:
        return self.name


Node = Union[StatementNode, SignalNode]


class EdgeKind(str, Enum):
    CONTROL = "control"
    DATA = "data"


def node_sort_key(node: Node) -> tuple[int, int, str]:
    """Total order over mixed nodes: statements by id, then signals by name"""
    if isinstance(node, StatementNode):
        return (0, node.stmt_id, "")
    return (1, 0, node.name)


class Pdg:
    """
    Immutable view over a dependency graph.

    Node attributes: `delay` (int), `signal_class` (SignalClass or None).
    Edge attribute: `kind` (EdgeKind).
    """

    def __init__(self, graph: nx.DiGraph) -> None:
        self.graph = nx.freeze(graph)

    @cached_property
    def statement_nodes(self) -> list[StatementNode]:
        return sorted(n for n in self.graph.nodes if isinstance(n, StatementNode))

    @cached_property
    def signal_nodes(self) -> list[SignalNode]:
        return sorted(n for n in self.graph.nodes if isinstance(n, SignalNode))

    @cached_property
    def outputs(self) -> list[SignalNode]:
        return [
            n
            for n in self.signal_nodes
            if self.graph.nodes[n].get("signal_class") is SignalClass.OUTPUT
        ]

    @property
    def stmt_count(self) -> int:
        return len(self.statement_nodes)

    @cached_property
    def _data_predecessors(self) -> dict[Node, list[Node]]:
        preds: dict[Node, list[Node]] = {n: [] for n in self.graph.nodes}
        for u, v, kind in self.graph.edges(data="kind"):
            if kind is EdgeKind.DATA:
                preds[v].append(u)
        return {n: sorted(p, key=node_sort_key) for n, p in preds.items()}

    def data_predecessors(self, node: Node) -> list[Node]:
        """Sources of data edges into a node, in node_sort_key order"""
        return self._data_predecessors[node]

    def delay(self, node: Node) -> int:
        return self.graph.nodes[node]["delay"]

    def signal_class(self, node: SignalNode) -> SignalClass:
        return self.graph.nodes[node]["signal_class"]

    def edges_of(self, kind: EdgeKind) -> list[tuple[Node, Node]]:
        edges = [(u, v) for u, v, k in self.graph.edges(data="kind") if k is kind]
        return sorted(edges, key=lambda e: (node_sort_key(e[0]), node_sort_key(e[1])))

    def has_edge(self, u: Node, v: Node, kind: EdgeKind | None = None) -> bool:
        if not self.graph.has_edge(u, v):
            return False
        return kind is None or self.graph.edges[u, v]["kind"] is kind

    def data_graph(self) -> nx.DiGraph:
        """Subgraph view holding data edges only"""
        return nx.subgraph_view(
            self.graph, filter_edge=lambda u, v: self.graph.edges[u, v]["kind"] is EdgeKind.DATA
        )

    @property
    def number_of_edges(self) -> int:
        return self.graph.number_of_edges()


def build_pdg(ast: DesignAst, classes: SignalClassMap, stmts: StatementTable) -> Pdg:
    """
    Build the dependency graph of a design.

    Args:
        ast: Parsed design
        classes: Signal classification of the same design
        stmts: Statement table of the same design

    Returns:
        Pdg containing every statement and every declared signal
    """
    graph = nx.DiGraph()

    for entry in stmts:
        graph.add_node(StatementNode(entry.stmt_id), delay=0, signal_class=None)

    for name in sorted(ast.signals):
        graph.add_node(
            SignalNode(name),
            delay=1 if classes.is_state(name) else 0,
            signal_class=classes[name],
        )

    for entry in stmts:
        node = StatementNode(entry.stmt_id)

        if entry.parent is not None:
            graph.add_edge(StatementNode(entry.parent), node, kind=EdgeKind.CONTROL)

        for name in entry.reads:
            graph.add_edge(SignalNode(name), node, kind=EdgeKind.DATA)

        # Enclosing conditions guard every nested statement
        for ancestor in stmts.ancestors(entry.stmt_id):
            for name in stmts[ancestor].reads:
                graph.add_edge(SignalNode(name), node, kind=EdgeKind.DATA)

        if entry.written is not None:
            graph.add_edge(node, SignalNode(entry.written), kind=EdgeKind.DATA)

        if entry.is_branch:
            for name in stmts.body_writes(entry.stmt_id):
                graph.add_edge(node, SignalNode(name), kind=EdgeKind.DATA)

    pdg = Pdg(graph)
    logger.info(
        "pdg_built",
        file=ast.filename,
        statements=pdg.stmt_count,
        signals=len(pdg.signal_nodes),
        edges=pdg.number_of_edges,
    )
    return pdg
