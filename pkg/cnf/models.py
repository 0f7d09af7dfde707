# cnf/models.py
#
# Value types of the CNF core: literals, clauses, formulas, assignments and
# Boolean-consistent literal permutations.
# ------------------------------------------------------------------
# • Everything here is frozen; operations build new values.
# • Clauses are normalised on construction (deduplicated, ascending by
#   variable, positive before negative); tautologies are kept.
# • Literal k>0 is the positive literal of variable k, k<0 the negative one,
#   exactly as in DIMACS.
# ------------------------------------------------------------------

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from django.core.exceptions import ValidationError


# ------------------------------------------------------------------#
#                              Errors                                #
# ------------------------------------------------------------------#
class DimacsError(ValidationError):
    """Malformed DIMACS input; ``line`` is 1-based."""

    def __init__(self, message: str, *, line: int, code: str):
        self.line = line
        super().__init__(f"line {line}: {message}", code=code)


# ------------------------------------------------------------------#
#                              Literal                               #
# ------------------------------------------------------------------#
@total_ordering
@dataclass(frozen=True, eq=True)
class Literal:
    variable: int
    positive: bool = True

    def __post_init__(self):
        if self.variable < 1:
            raise ValidationError(
                f"Variable index must be >= 1, got {self.variable}.", code="index_range"
            )

    @classmethod
    def from_dimacs(cls, value: int) -> "Literal":
        if value == 0:
            raise ValidationError("0 is not a literal.", code="literal")
        return cls(abs(value), value > 0)

    @classmethod
    def from_index(cls, index: int) -> "Literal":
        """Inverse of :attr:`index`."""
        return cls(index // 2 + 1, index % 2 == 0)

    def to_dimacs(self) -> int:
        return self.variable if self.positive else -self.variable

    @property
    def index(self) -> int:
        # positive literal of X_i at 2(i-1), negative at 2(i-1)+1
        return 2 * (self.variable - 1) + (0 if self.positive else 1)

    def negate(self) -> "Literal":
        return Literal(self.variable, not self.positive)

    __neg__ = negate

    def __lt__(self, other: "Literal") -> bool:
        if not isinstance(other, Literal):
            return NotImplemented
        return self.index < other.index

    def __str__(self) -> str:
        return f"x{self.variable}" if self.positive else f"~x{self.variable}"


# ------------------------------------------------------------------#
#                               Clause                               #
# ------------------------------------------------------------------#
@dataclass(frozen=True)
class Clause:
    literals: Tuple[Literal, ...]

    def __post_init__(self):
        normalised = tuple(sorted(set(self.literals)))
        if not normalised:
            raise ValidationError("A clause needs at least one literal.", code="empty_clause")
        object.__setattr__(self, "literals", normalised)

    @classmethod
    def of(cls, *values: int) -> "Clause":
        return cls(tuple(Literal.from_dimacs(v) for v in values))

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __contains__(self, literal: object) -> bool:
        return literal in self.literals

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(sorted({lit.variable for lit in self.literals}))

    @property
    def is_tautology(self) -> bool:
        return any(lit.negate() in self.literals for lit in self.literals if lit.positive)

    def to_dimacs(self) -> List[int]:
        return [lit.to_dimacs() for lit in self.literals]

    def satisfied_by(self, assignment: "Assignment") -> bool:
        return any(assignment.value_of(lit) for lit in self.literals)

    def __str__(self) -> str:
        return "(" + " + ".join(str(lit) for lit in self.literals) + ")"


# ------------------------------------------------------------------#
#                             CnfFormula                             #
# ------------------------------------------------------------------#
@dataclass(frozen=True)
class CnfFormula:
    """Conjunction of clauses over variables 1..num_vars.

    ``source_vars`` / ``source_clauses`` mark the prefix that came from the
    input formula when predicates were appended by ``conjoin``; they take no
    part in equality.
    """

    num_vars: int
    clauses: Tuple[Clause, ...] = ()
    source_vars: Optional[int] = field(default=None, compare=False)
    source_clauses: Optional[int] = field(default=None, compare=False)
    comments: Tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.num_vars < 1:
            raise ValidationError(
                f"Variable count must be positive, got {self.num_vars}.", code="index_range"
            )
        for pos, clause in enumerate(self.clauses, start=1):
            top = max(lit.variable for lit in clause)
            if top > self.num_vars:
                raise ValidationError(
                    f"Clause {pos} uses x{top} but the formula has {self.num_vars} variables.",
                    code="variable_range",
                )

    @classmethod
    def of(cls, num_vars: int, *clauses: Iterable[int]) -> "CnfFormula":
        return cls(num_vars, tuple(Clause.of(*c) for c in clauses))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def original_vars(self) -> int:
        return self.source_vars if self.source_vars is not None else self.num_vars

    @property
    def predicate_clauses(self) -> Tuple[Clause, ...]:
        """Clauses appended after the source formula (empty for plain inputs)."""
        if self.source_clauses is None:
            return ()
        return self.clauses[self.source_clauses:]

    def clause_multiset(self) -> Counter:
        return Counter(self.clauses)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.clauses) or "()"


# ------------------------------------------------------------------#
#                             Assignment                             #
# ------------------------------------------------------------------#
@dataclass(frozen=True, order=True)
class Assignment:
    """Total assignment; ``values[0]`` is X1. Ordering is lexicographic, X1 first."""

    values: Tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(bool(v) for v in self.values))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Assignment":
        return cls(tuple(bool(b) for b in bits))

    @classmethod
    def from_dimacs(cls, num_vars: int, model: Iterable[int]) -> "Assignment":
        values = [False] * num_vars
        for value in model:
            if value > 0:
                values[value - 1] = True
        return cls(tuple(values))

    @property
    def num_vars(self) -> int:
        return len(self.values)

    def __getitem__(self, variable: int) -> bool:
        return self.values[variable - 1]

    def value_of(self, literal: Literal) -> bool:
        value = self.values[literal.variable - 1]
        return value if literal.positive else not value

    def restrict(self, num_vars: int) -> "Assignment":
        return Assignment(self.values[:num_vars])

    def to_dimacs(self) -> List[int]:
        return [v if bit else -v for v, bit in enumerate(self.values, start=1)]

    def __str__(self) -> str:
        return "".join("1" if v else "0" for v in self.values)


# ------------------------------------------------------------------#
#                        LiteralPermutation                          #
# ------------------------------------------------------------------#
@dataclass(frozen=True)
class LiteralPermutation:
    """Boolean-consistent bijection on the 2n literals.

    Stored as the signed image of each positive literal: ``images[i-1]`` is
    the DIMACS value of γ(X_i). Consistency gives γ(¬X_i) = ¬γ(X_i).
    """

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if sorted(abs(v) for v in images) != list(range(1, len(images) + 1)):
            raise ValidationError(
                f"Images {list(images)} are not a permutation of the variables.", code="arity"
            )

    # ----------------------------- Builders ------------------------#
    @classmethod
    def identity(cls, num_vars: int) -> "LiteralPermutation":
        return cls(tuple(range(1, num_vars + 1)))

    @classmethod
    def from_mapping(cls, num_vars: int, mapping: Mapping[Literal, Literal]) -> "LiteralPermutation":
        """Build from a full literal map, checking Boolean consistency."""
        images: List[int] = []
        for var in range(1, num_vars + 1):
            pos, neg = Literal(var, True), Literal(var, False)
            if pos not in mapping or neg not in mapping:
                raise ValidationError(f"x{var} is not mapped in both polarities.", code="arity")
            if mapping[neg] != mapping[pos].negate():
                raise ValidationError(
                    f"{pos}→{mapping[pos]} but {neg}→{mapping[neg]}.",
                    code="boolean_consistency",
                )
            images.append(mapping[pos].to_dimacs())
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, num_vars: int, *cycles: Sequence[int]) -> "LiteralPermutation":
        """Build from cycles of signed DIMACS literals; complement cycles are implied.

        ``from_cycles(5, (3, 4))`` is (x3 x4)(~x3 ~x4).
        """
        mapping: Dict[int, int] = {}
        for cycle in cycles:
            for pos, src in enumerate(cycle):
                dst = cycle[(pos + 1) % len(cycle)]
                for a, b in ((src, dst), (-src, -dst)):
                    if mapping.setdefault(a, b) != b:
                        raise ValidationError(
                            f"Cycles disagree on the image of {a}.", code="boolean_consistency"
                        )
        return cls(tuple(mapping.get(v, v) for v in range(1, num_vars + 1)))

    # ----------------------------- Action --------------------------#
    @property
    def num_vars(self) -> int:
        return len(self.images)

    def image_of(self, value: int) -> int:
        """Image of a signed DIMACS literal."""
        image = self.images[abs(value) - 1]
        return image if value > 0 else -image

    def __call__(self, literal: Literal) -> Literal:
        return Literal.from_dimacs(self.image_of(literal.to_dimacs()))

    @property
    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def compose(self, other: "LiteralPermutation") -> "LiteralPermutation":
        """``self`` first, then ``other``."""
        if other.num_vars != self.num_vars:
            raise ValidationError("Permutation arity mismatch.", code="arity")
        return LiteralPermutation(tuple(other.image_of(v) for v in self.images))

    __mul__ = compose

    def inverse(self) -> "LiteralPermutation":
        inv = [0] * self.num_vars
        for var, image in enumerate(self.images, start=1):
            inv[abs(image) - 1] = var if image > 0 else -var
        return LiteralPermutation(tuple(inv))

    def act(self, assignment: Assignment) -> Assignment:
        """The assignment b with b(γ(l)) = a(l), i.e. a∘γ⁻¹."""
        values = [False] * self.num_vars
        for var, image in enumerate(self.images, start=1):
            values[abs(image) - 1] = assignment[var] if image > 0 else not assignment[var]
        return Assignment(tuple(values))

    def cycles(self) -> List[Tuple[Literal, ...]]:
        """Disjoint cycles over all 2n literals, fixed points omitted.

        Each cycle starts at its smallest literal; cycles are sorted by it.
        """
        seen: set = set()
        out: List[Tuple[Literal, ...]] = []
        for index in range(2 * self.num_vars):
            start = Literal.from_index(index)
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    # -------------------------- Serialisation ----------------------#
    def to_line(self) -> str:
        return "p " + " ".join(str(v) for v in self.images)

    @classmethod
    def from_line(cls, line: str) -> "LiteralPermutation":
        fields = line.split()
        if not fields or fields[0] != "p":
            raise ValidationError(f"Not a permutation line: {line!r}", code="literal")
        try:
            return cls(tuple(int(v) for v in fields[1:]))
        except ValueError as exc:
            raise ValidationError(f"Non-integer image in {line!r}", code="literal") from exc
