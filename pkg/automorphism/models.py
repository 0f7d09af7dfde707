# automorphism/models.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Tuple

from django.core.exceptions import ValidationError

from cnf.models import LiteralPermutation


def cycle_notation(perm: LiteralPermutation) -> str:
    """Disjoint cycles, e.g. ``(x3 x4)(~x3 ~x4)``; the identity is ``()``."""
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(lit) for lit in cycle) + ")" for cycle in cycles)


# ------------------------------------------------------------------#
#                         VertexPermutation                          #
# ------------------------------------------------------------------#
@dataclass(frozen=True)
class VertexPermutation:
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValidationError("Vertex images are not a bijection.", code="arity")

    @classmethod
    def identity(cls, num_vertices: int) -> "VertexPermutation":
        return cls(tuple(range(num_vertices)))

    def __call__(self, vertex: int) -> int:
        return self.images[vertex]

    def __len__(self) -> int:
        return len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images))

    def compose(self, other: "VertexPermutation") -> "VertexPermutation":
        """``self`` first, then ``other``."""
        return VertexPermutation(tuple(other.images[v] for v in self.images))

    __mul__ = compose


# ------------------------------------------------------------------#
#                            GeneratorSet                            #
# ------------------------------------------------------------------#
@dataclass(frozen=True)
class GeneratorSet:
    """Nonidentity literal permutations over ``num_vars`` variables."""

    num_vars: int
    generators: Tuple[LiteralPermutation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for gen in self.generators:
            if gen.num_vars != self.num_vars:
                raise ValidationError("Generator arity mismatch.", code="arity")
            if gen.is_identity:
                raise ValidationError("The identity is not a generator.", code="identity")

    @classmethod
    def from_cycles(cls, num_vars: int, *generators) -> "GeneratorSet":
        """``from_cycles(6, [(1, 2), (3, 4)])``: one list of cycles per generator."""
        return cls(num_vars, tuple(LiteralPermutation.from_cycles(num_vars, *cycles) for cycles in generators))

    def __iter__(self) -> Iterator[LiteralPermutation]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def renderings(self) -> List[str]:
        return [cycle_notation(gen) for gen in self.generators]

    def to_lines(self) -> str:
        return "".join(gen.to_line() + "\n" for gen in self.generators)

    @classmethod
    def from_lines(cls, num_vars: int, text: str) -> "GeneratorSet":
        perms = [LiteralPermutation.from_line(line) for line in text.splitlines() if line.strip()]
        return cls(num_vars, tuple(perms))
