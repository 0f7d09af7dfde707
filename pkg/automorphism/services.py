"""
automorphism/services.py
Automorphisms of the colored CNF graph by equitable refinement and
individualization, and their projection to literal permutations.

Search outline:
  refine the initial coloring; at a non-discrete coloring take the first
  non-singleton cell, individualize each member in turn, refine, descend;
  every discrete leaf fixes a vertex labeling. Two leaves whose relabeled
  edge sets coincide give the automorphism carrying one labeling onto the
  other. Every leaf is compared with the first leaf only, unless
  ``all_pairs`` is set.
  Nodes on the first path skip children in the orbit of an explored
  sibling, and a subtree is left as soon as one of its leaves matches the
  first leaf.
"""

from __future__ import annotations

import logging
from itertools import groupby
from typing import Dict, Final, FrozenSet, List, Optional, Sequence, Set, Tuple, TypeVar

from django.conf import settings
from django.core.exceptions import ValidationError

from cnf.models import CnfFormula, Literal, LiteralPermutation
from cnf.services import generate_group, is_symmetry
from encoding.models import ColoredGraph, OrderedPartition
from encoding.services import encode, initial_coloring

from .models import GeneratorSet, VertexPermutation, cycle_notation

logger: Final = logging.getLogger(__name__)

P = TypeVar("P", VertexPermutation, LiteralPermutation)

__all__ = [
    "refine",
    "is_discrete",
    "select_target_cell",
    "individualize",
    "search_automorphisms",
    "project_to_literals",
    "cycle_notation",
    "irredundant",
    "find_generators",
]


# ------------------------------------------------------------------ #
#                         Partition refinement                       #
# ------------------------------------------------------------------ #
def refine(graph: ColoredGraph, partition: OrderedPartition) -> OrderedPartition:
    """Coarsest equitable refinement of ``partition``.

    Each round splits every cell by the vector of edge counts from its
    members into every current cell; fragments replace the cell in place,
    ordered by ascending count vector. Rounds repeat until nothing splits.
    """
    cells: List[Tuple[int, ...]] = list(partition.cells)
    rounds = 0
    while True:
        rounds += 1
        where = {v: pos for pos, cell in enumerate(cells) for v in cell}
        width = len(cells)
        refined: List[Tuple[int, ...]] = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            signatures = []
            for v in cell:
                counts = [0] * width
                for w in graph.adjacency[v]:
                    counts[where[w]] += 1
                signatures.append((tuple(counts), v))
            signatures.sort()
            fragments = [tuple(v for _, v in group) for _, group in groupby(signatures, key=lambda s: s[0])]
            refined.extend(fragments)
        if len(refined) == width:
            logger.debug("refine: stable after %d rounds, %d cells", rounds, width)
            return OrderedPartition(tuple(refined))
        cells = refined


def is_discrete(partition: OrderedPartition) -> bool:
    return partition.is_discrete


def select_target_cell(partition: OrderedPartition) -> int:
    """Index of the first non-singleton cell."""
    for pos, cell in enumerate(partition.cells):
        if len(cell) > 1:
            return pos
    raise ValidationError("A discrete partition has no target cell.", code="discrete")


def individualize(partition: OrderedPartition, vertex: int) -> OrderedPartition:
    """Replace the cell T holding ``vertex`` by [{vertex} | T - {vertex}]."""
    pos = partition.cell_index.get(vertex)
    if pos is None or len(partition[pos]) < 2:
        raise ValidationError(
            f"Vertex {vertex} is not in a non-singleton cell.", code="individualize"
        )
    cell = partition[pos]
    rest = tuple(v for v in cell if v != vertex)
    cells = partition.cells[:pos] + ((vertex,), rest) + partition.cells[pos + 1:]
    return OrderedPartition(cells)


# ------------------------------------------------------------------ #
#                        Individualization search                    #
# ------------------------------------------------------------------ #
class _Node:
    """An inner node of the search tree; ``prefix`` holds the vertices individualized above it."""

    __slots__ = ("partition", "cell", "prefix", "first_path", "explored", "next")

    def __init__(self, partition: OrderedPartition, prefix: Tuple[int, ...], first_path: bool):
        self.partition = partition
        self.cell = partition[select_target_cell(partition)]
        self.prefix = prefix
        self.first_path = first_path
        self.explored: List[int] = []
        self.next = 0


def _orbit_of(vertices: Sequence[int], generators: Sequence[VertexPermutation]) -> Set[int]:
    seen = set(vertices)
    queue = list(vertices)
    while queue:
        v = queue.pop()
        for gen in generators:
            w = gen(v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def _next_child(node: _Node, found: Sequence[VertexPermutation]) -> Optional[int]:
    """Next target-cell vertex to individualize.

    On the first path, a vertex in the orbit of an explored sibling under the
    automorphisms fixing ``node.prefix`` is skipped.
    """
    covered: Optional[Set[int]] = None
    while node.next < len(node.cell):
        vertex = node.cell[node.next]
        node.next += 1
        if node.first_path and node.explored:
            if covered is None:
                fixing = [g for g in found if all(g(v) == v for v in node.prefix)]
                covered = _orbit_of(node.explored, fixing)
            if vertex in covered:
                continue
        return vertex
    return None


def _certificate(graph: ColoredGraph, labeling: Tuple[int, ...]) -> FrozenSet[Tuple[int, int]]:
    """Edge set of the graph relabeled by a discrete coloring."""
    return frozenset(
        (min(labeling[u], labeling[v]), max(labeling[u], labeling[v])) for u, v in graph.edges
    )


def _carry(source: Tuple[int, ...], target: Tuple[int, ...]) -> VertexPermutation:
    """The vertex map sending each vertex of ``source`` to the vertex at the same position of ``target``."""
    at_position = [0] * len(target)
    for vertex, pos in enumerate(target):
        at_position[pos] = vertex
    return VertexPermutation(tuple(at_position[source[v]] for v in range(len(source))))


def irredundant(perms: Sequence[P], identity: P, limit: Optional[int] = None) -> List[P]:
    """Generators of the group of ``perms`` none of which the others generate.

    A greedy pass skips permutations already generated by the kept ones; a
    second pass drops kept ones that later additions made redundant. When a
    closure grows past ``limit`` the permutations are returned as given,
    minus duplicates and the identity.
    """
    try:
        kept: List[P] = []
        group = {identity}
        for perm in perms:
            if perm in group:
                continue
            kept.append(perm)
            group = generate_group(kept, identity, limit)

        pos = 0
        while pos < len(kept):
            others = kept[:pos] + kept[pos + 1:]
            if kept[pos] in generate_group(others, identity, limit):
                kept = others
            else:
                pos += 1
        return kept
    except ValidationError:
        logger.info("Group closure above %d elements; redundancy not checked", limit)
        return [p for p in dict.fromkeys(perms) if p != identity]


def search_automorphisms(
    graph: ColoredGraph,
    *,
    all_pairs: bool = False,
    max_leaves: Optional[int] = None,
) -> List[VertexPermutation]:
    """Irredundant nonidentity generators of the automorphisms found by the search."""
    if max_leaves is None:
        max_leaves = int(getattr(settings, "SYMBREAK_MAX_SEARCH_LEAVES", 50000))

    classes: Dict[FrozenSet[Tuple[int, int]], List[Tuple[int, ...]]] = {}
    first: Optional[FrozenSet[Tuple[int, int]]] = None
    first_labeling: Optional[Tuple[int, ...]] = None
    found: List[VertexPermutation] = []
    leaves = 0

    stack: List[_Node] = []
    partition = refine(graph, initial_coloring(graph))
    prefix: Tuple[int, ...] = ()
    first_path = True
    while True:
        if partition.is_discrete:
            if leaves >= max_leaves:
                logger.warning(
                    "Automorphism search stopped after %d leaves (SYMBREAK_MAX_SEARCH_LEAVES); "
                    "generators may be incomplete.", max_leaves,
                )
                break
            leaves += 1
            labeling = partition.labeling()
            cert = _certificate(graph, labeling)
            if first is None:
                first = cert
            if all_pairs:
                for other in classes.get(cert, ()):
                    found.append(_carry(other, labeling))
                classes.setdefault(cert, []).append(labeling)
            elif cert == first and first_labeling is None:
                first_labeling = labeling
            elif cert == first:
                found.append(_carry(first_labeling, labeling))
            if cert == first and not first_path:
                # rest of this subtree is an image of the first one
                while stack and not stack[-1].first_path:
                    stack.pop()
        else:
            stack.append(_Node(partition, prefix, first_path))

        vertex: Optional[int] = None
        while stack:
            vertex = _next_child(stack[-1], found)
            if vertex is not None:
                break
            stack.pop()
        if not stack:
            break
        node = stack[-1]
        node.explored.append(vertex)
        partition = refine(graph, individualize(node.partition, vertex))
        prefix = node.prefix + (vertex,)
        first_path = node.first_path and len(node.explored) == 1

    candidates = [perm for perm in dict.fromkeys(found) if not perm.is_identity]
    limit = int(getattr(settings, "SYMBREAK_MAX_CLOSURE_SIZE", 5000))
    generators = irredundant(candidates, VertexPermutation.identity(graph.num_vertices), limit)
    logger.debug("search: %d leaves, %d automorphisms, %d generators", leaves, len(candidates), len(generators))
    return generators


# ------------------------------------------------------------------ #
#                         Back to the formula                        #
# ------------------------------------------------------------------ #
def project_to_literals(perm: VertexPermutation, graph: ColoredGraph) -> LiteralPermutation:
    if len(perm) != graph.num_vertices:
        raise ValidationError("Vertex permutation size does not match the graph.", code="arity")
    for v in range(graph.num_vertices):
        if graph.kind(v) != graph.kind(perm(v)):
            raise ValidationError(f"Vertex {v} changes kind under the permutation.", code="kind")
    mapping = {Literal.from_index(v): Literal.from_index(perm(v)) for v in graph.literal_vertices}
    return LiteralPermutation.from_mapping(graph.num_vars, mapping)


def find_generators(formula: CnfFormula, *, all_pairs: bool = False) -> GeneratorSet:
    """encode → search → project; every generator is re-checked against the formula."""
    graph = encode(formula)
    projected = [project_to_literals(p, graph) for p in search_automorphisms(graph, all_pairs=all_pairs)]
    candidates = [p for p in dict.fromkeys(projected) if not p.is_identity]
    limit = int(getattr(settings, "SYMBREAK_MAX_CLOSURE_SIZE", 5000))
    generators = irredundant(candidates, LiteralPermutation.identity(formula.num_vars), limit)

    for gen in generators:
        if not is_symmetry(formula, gen):
            raise RuntimeError(f"Graph automorphism {cycle_notation(gen)} is not a formula symmetry")

    logger.info("Found %d symmetry generator(s) over %d variables", len(generators), formula.num_vars)
    return GeneratorSet(formula.num_vars, tuple(generators))
