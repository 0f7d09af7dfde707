"""
sbp/models.py
Predicate formula trees, SBP clause sets and the SBP method enum.

Formula nodes evaluate against anything indexable by variable number: an
``Assignment`` gives a bool, a mapping of numpy bool columns gives a column,
so one tree serves single checks and whole truth tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Any, FrozenSet, NamedTuple, Tuple

import numpy as np
from django.core.exceptions import ValidationError
from django.db import models
from django.utils.translation import gettext_lazy as _

from cnf.models import Clause, Literal


# ------------------------------------------------------------------ #
#                         Enumerated Choices                         #
# ------------------------------------------------------------------ #
class SbpMethod(models.TextChoices):
    LEX = "lex", _("Lex-leader")
    PAIRWISE = "pairwise", _("Pairwise")


class PairwiseInapplicable(ValidationError):
    """A generator is not a product of variable swaps."""

    def __init__(self, message: str):
        super().__init__(message, code="pairwise")


# ------------------------------------------------------------------ #
#                           Formula nodes                            #
# ------------------------------------------------------------------ #
class PredicateFormula:
    """Base of the formula tree; subclasses are frozen dataclasses."""

    def value(self, values: Any) -> Any:
        raise NotImplementedError

    def evaluate(self, assignment: Any) -> bool:
        return bool(self.value(assignment))

    def variables(self) -> FrozenSet[int]:
        raise NotImplementedError


@dataclass(frozen=True)
class Const(PredicateFormula):
    truth: bool

    def value(self, values: Any) -> Any:
        return np.bool_(self.truth)

    def variables(self) -> FrozenSet[int]:
        return frozenset()

    def __str__(self) -> str:
        return "1" if self.truth else "0"


TRUE: Const = Const(True)
FALSE: Const = Const(False)


@dataclass(frozen=True)
class Lit(PredicateFormula):
    literal: Literal

    @classmethod
    def of(cls, value: int) -> "Lit":
        return cls(Literal.from_dimacs(value))

    def value(self, values: Any) -> Any:
        v = values[self.literal.variable]
        return v if self.literal.positive else np.logical_not(v)

    def variables(self) -> FrozenSet[int]:
        return frozenset({self.literal.variable})

    def __str__(self) -> str:
        return str(self.literal)


@dataclass(frozen=True)
class Not(PredicateFormula):
    child: PredicateFormula

    def value(self, values: Any) -> Any:
        return np.logical_not(self.child.value(values))

    def variables(self) -> FrozenSet[int]:
        return self.child.variables()

    def __str__(self) -> str:
        return f"~({self.child})"


@dataclass(frozen=True)
class And(PredicateFormula):
    children: Tuple[PredicateFormula, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def value(self, values: Any) -> Any:
        return reduce(np.logical_and, (c.value(values) for c in self.children), np.True_)

    def variables(self) -> FrozenSet[int]:
        return frozenset().union(*(c.variables() for c in self.children))

    def __str__(self) -> str:
        return "(" + " & ".join(str(c) for c in self.children) + ")" if self.children else "1"


@dataclass(frozen=True)
class Or(PredicateFormula):
    children: Tuple[PredicateFormula, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def value(self, values: Any) -> Any:
        return reduce(np.logical_or, (c.value(values) for c in self.children), np.False_)

    def variables(self) -> FrozenSet[int]:
        return frozenset().union(*(c.variables() for c in self.children))

    def __str__(self) -> str:
        return "(" + " + ".join(str(c) for c in self.children) + ")" if self.children else "0"


@dataclass(frozen=True)
class Implies(PredicateFormula):
    antecedent: PredicateFormula
    consequent: PredicateFormula

    def value(self, values: Any) -> Any:
        return np.logical_or(np.logical_not(self.antecedent.value(values)), self.consequent.value(values))

    def variables(self) -> FrozenSet[int]:
        return self.antecedent.variables() | self.consequent.variables()

    def __str__(self) -> str:
        return f"({self.antecedent} -> {self.consequent})"


@dataclass(frozen=True)
class Iff(PredicateFormula):
    """``left = right``"""

    left: PredicateFormula
    right: PredicateFormula

    def value(self, values: Any) -> Any:
        return np.equal(self.left.value(values), self.right.value(values))

    def variables(self) -> FrozenSet[int]:
        return self.left.variables() | self.right.variables()

    def __str__(self) -> str:
        return f"({self.left} = {self.right})"


@dataclass(frozen=True)
class Leq(PredicateFormula):
    """Boolean ordering ``left <= right``, i.e. ~left + right."""

    left: PredicateFormula
    right: PredicateFormula

    def value(self, values: Any) -> Any:
        return np.logical_or(np.logical_not(self.left.value(values)), self.right.value(values))

    def variables(self) -> FrozenSet[int]:
        return self.left.variables() | self.right.variables()

    def __str__(self) -> str:
        return f"({self.left} <= {self.right})"


class Simplification(NamedTuple):
    formula: PredicateFormula
    # False when some conjunct was too wide for the semantic check
    complete: bool


# ------------------------------------------------------------------ #
#                             SbpClauses                             #
# ------------------------------------------------------------------ #
@dataclass(frozen=True)
class SbpClauses:
    """Clauses of a symmetry-breaking predicate.

    Aux variables occupy ``first_aux_var .. first_aux_var + num_aux_vars - 1``;
    every other variable belongs to the source formula.
    """

    clauses: Tuple[Clause, ...]
    first_aux_var: int
    num_aux_vars: int = 0
    method: SbpMethod = SbpMethod.LEX

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.first_aux_var < 1 or self.num_aux_vars < 0:
            raise ValidationError("Aux variable range is out of bounds.", code="index_range")
        top = self.first_aux_var + self.num_aux_vars - 1
        for clause in self.clauses:
            if max(clause.variables) > top:
                raise ValidationError(f"Clause {clause} uses a variable past x{top}.", code="index_range")
        if self.method == SbpMethod.PAIRWISE:
            if self.num_aux_vars:
                raise ValidationError("Pairwise SBPs use no aux variables.", code="pairwise")
            if any(len(clause) != 2 for clause in self.clauses):
                raise ValidationError("Pairwise SBP clauses are binary.", code="pairwise")

    @classmethod
    def empty(cls, num_vars: int, method: SbpMethod = SbpMethod.LEX) -> "SbpClauses":
        return cls((), num_vars + 1, 0, method)

    @property
    def source_vars(self) -> int:
        return self.first_aux_var - 1

    def __len__(self) -> int:
        return len(self.clauses)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.clauses) or "1"
