# encoding/models.py
#
# Colored graph of a CNF formula and ordered partitions of its vertices.
# ------------------------------------------------------------------
# Vertex numbering (fixed for the whole project):
#   positive literal of X_i → 2(i-1), negative → 2(i-1)+1,
#   clause j (1-based)      → 2n + j - 1.
# ------------------------------------------------------------------

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, Tuple

from django.core.exceptions import ValidationError
from django.db import models
from django.utils.translation import gettext_lazy as _

from cnf.models import Literal


class VertexKind(models.TextChoices):
    LITERAL = "literal", _("Literal")
    CLAUSE = "clause", _("Clause")


# ------------------------------------------------------------------#
#                            ColoredGraph                            #
# ------------------------------------------------------------------#
@dataclass(frozen=True)
class ColoredGraph:
    num_vars: int
    num_clauses: int
    edges: FrozenSet[Tuple[int, int]]
    adjacency: Tuple[Tuple[int, ...], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = self.num_vertices
        adjacency: list = [[] for _ in range(n)]
        for u, v in self.edges:
            if not (0 <= u < v < n):
                raise ValidationError(f"Edge ({u}, {v}) is a self-loop, unordered or out of range.")
            adjacency[u].append(v)
            adjacency[v].append(u)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adjacency))

        for vertex in range(2 * self.num_vars):
            mates = [w for w in self.adjacency[vertex] if w < 2 * self.num_vars]
            if mates != [vertex ^ 1]:
                raise ValidationError(f"Literal vertex {vertex} must be adjacent to its complement only.")
        for vertex in self.clause_vertices:
            if not self.adjacency[vertex]:
                raise ValidationError(f"Clause vertex {vertex} has no literals.")

    @property
    def num_vertices(self) -> int:
        return 2 * self.num_vars + self.num_clauses

    @property
    def literal_vertices(self) -> range:
        return range(2 * self.num_vars)

    @property
    def clause_vertices(self) -> range:
        return range(2 * self.num_vars, self.num_vertices)

    def kind(self, vertex: int) -> VertexKind:
        return VertexKind.LITERAL if vertex < 2 * self.num_vars else VertexKind.CLAUSE

    def literal(self, vertex: int) -> Literal:
        return Literal.from_index(vertex)

    def label(self, vertex: int) -> str:
        if self.kind(vertex) == VertexKind.LITERAL:
            return str(self.literal(vertex))
        return f"c{vertex - 2 * self.num_vars + 1}"

    def degree(self, vertex: int) -> int:
        return len(self.adjacency[vertex])


# ------------------------------------------------------------------#
#                          OrderedPartition                          #
# ------------------------------------------------------------------#
@dataclass(frozen=True)
class OrderedPartition:
    """Sequence of disjoint nonempty vertex cells; cell order matters."""

    cells: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(sorted(cell)) for cell in self.cells)
        object.__setattr__(self, "cells", cells)
        seen: set = set()
        for cell in cells:
            if not cell:
                raise ValidationError("Partition cells must be nonempty.")
            if seen.intersection(cell):
                raise ValidationError("Partition cells must be disjoint.")
            seen.update(cell)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return iter(self.cells)

    def __getitem__(self, index: int) -> Tuple[int, ...]:
        return self.cells[index]

    @cached_property
    def cell_index(self) -> Dict[int, int]:
        return {v: pos for pos, cell in enumerate(self.cells) for v in cell}

    def covers(self, num_vertices: int) -> bool:
        return sorted(self.cell_index) == list(range(num_vertices))

    @property
    def is_discrete(self) -> bool:
        return all(len(cell) == 1 for cell in self.cells)

    def family(self) -> FrozenSet[FrozenSet[int]]:
        """Cells as an unordered family."""
        return frozenset(frozenset(cell) for cell in self.cells)

    def labeling(self) -> Tuple[int, ...]:
        """For a discrete partition: position of each vertex's cell."""
        out = [0] * len(self.cells)
        for pos, (vertex,) in enumerate(self.cells):
            out[vertex] = pos
        return tuple(out)
