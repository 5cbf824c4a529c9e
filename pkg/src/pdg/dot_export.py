"""
DOT rendering of a Pdg with the graphviz package (text only, never rendered).
"""

import re

from graphviz import Digraph

from src.pdg.graph import EdgeKind, Node, Pdg, node_sort_key

_STATEMENT_ID = re.compile(r"s\d+")


def _node_ids(pdg: Pdg) -> dict[Node, str]:
    ids: dict[Node, str] = {n: str(n) for n in pdg.statement_nodes}
    taken = set(ids.values())
    for node in pdg.signal_nodes:
        name = node.name
        ids[node] = f"sig_{name}" if name in taken or _STATEMENT_ID.fullmatch(name) else name
    return ids


def export_dot(pdg: Pdg, name: str = "pdg") -> str:
    """
    Render a Pdg as deterministic DOT text.

    Statements are `s<id>` boxes, signals are ellipses labeled with their
    class. Data edges are solid, control edges dashed. Each state-holding
    signal gets an extra `name [delay=1]` statement.

    Args:
        pdg: Graph to render
        name: DOT graph name

    Returns:
        DOT source text
    """
    ids = _node_ids(pdg)
    dot = Digraph(name=name)
    dot.attr(rankdir="LR")

    for node in pdg.statement_nodes:
        dot.node(ids[node], label=ids[node], shape="box")

    for node in pdg.signal_nodes:
        dot.node(ids[node], label=f"{node.name} ({pdg.signal_class(node).value})")

    # Separate `name [delay=N]` statements; DOT merges repeated node attributes
    for node in pdg.signal_nodes:
        if pdg.delay(node):
            dot.node(ids[node], delay=str(pdg.delay(node)))

    edges = sorted(
        pdg.graph.edges(data="kind"),
        key=lambda e: (node_sort_key(e[0]), node_sort_key(e[1])),
    )
    for u, v, kind in edges:
        if kind is EdgeKind.CONTROL:
            dot.edge(ids[u], ids[v], style="dashed")
        else:
            dot.edge(ids[u], ids[v])

    return dot.source
