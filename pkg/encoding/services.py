"""
encoding/services.py
CNF → colored graph: one vertex per literal and per clause, an edge from
each clause to its literals and one complement edge per variable. The
literal/clause split is carried by the initial two-cell coloring.
"""

from __future__ import annotations

import logging
from typing import Final, List, Set, Tuple

from django.template.loader import render_to_string

from cnf.models import CnfFormula, Literal

from .models import ColoredGraph, OrderedPartition, VertexKind

logger: Final = logging.getLogger(__name__)

NODE_SHAPES: Final = {
    VertexKind.LITERAL: "ellipse",
    VertexKind.CLAUSE: "box",
}


def encode(formula: CnfFormula) -> ColoredGraph:
    n = formula.num_vars
    edges: Set[Tuple[int, int]] = set()

    # complement edges, also for unused polarities
    for var in range(1, n + 1):
        edges.add((Literal(var).index, Literal(var, False).index))

    for j, clause in enumerate(formula.clauses):
        clause_vertex = 2 * n + j
        for lit in clause:
            edges.add((lit.index, clause_vertex))

    graph = ColoredGraph(n, formula.num_clauses, frozenset(edges))
    logger.debug("Encoded %d vars / %d clauses as %d vertices, %d edges",
                 n, formula.num_clauses, graph.num_vertices, len(edges))
    return graph


def initial_coloring(graph: ColoredGraph) -> OrderedPartition:
    """[all literal vertices | all clause vertices]; the clause cell is omitted when empty."""
    cells = [tuple(graph.literal_vertices)]
    if graph.num_clauses:
        cells.append(tuple(graph.clause_vertices))
    return OrderedPartition(tuple(cells))


def to_dot(graph: ColoredGraph) -> str:
    nodes = [
        {"id": v, "label": graph.label(v), "shape": NODE_SHAPES[graph.kind(v)]}
        for v in range(graph.num_vertices)
    ]
    return render_to_string("encoding/graph.dot", {"nodes": nodes, "edges": sorted(graph.edges)})


def to_adjacency_text(graph: ColoredGraph) -> str:
    """One line per vertex: ``<label> [<kind>]: <neighbour labels>``."""
    lines: List[str] = []
    for v in range(graph.num_vertices):
        neighbours = " ".join(graph.label(w) for w in graph.adjacency[v])
        lines.append(f"{graph.label(v)} [{graph.kind(v).value}]: {neighbours}")
    return "\n".join(lines) + "\n"
