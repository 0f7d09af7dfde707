# solver/models.py
#
# Search state and results of the DPLL solver.
# ------------------------------------------------------------------
# • PartialAssignment is the only mutable value in the project; it belongs
#   to one solver run.
# • Trail entries are unique per variable; backtrack(mark) pops back to a
#   recorded trail length.
# ------------------------------------------------------------------

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional

from django.core.exceptions import ValidationError
from django.db import models
from django.utils.translation import gettext_lazy as _

from cnf.models import Assignment, Literal


class SolveStatus(models.TextChoices):
    SAT = "SAT", _("Satisfiable")
    UNSAT = "UNSAT", _("Unsatisfiable")


class TrailReason(models.TextChoices):
    ASSUMPTION = "assumption", _("Assumption")
    DECISION = "decision", _("Decision")
    PROPAGATED = "propagated", _("Propagated")


class TrailEntry(NamedTuple):
    variable: int
    value: bool
    reason: TrailReason


# ------------------------------------------------------------------#
#                         PartialAssignment                          #
# ------------------------------------------------------------------#
class PartialAssignment:
    def __init__(self, num_vars: int):
        self.num_vars = num_vars
        self._values: List[Optional[bool]] = [None] * (num_vars + 1)
        self.trail: List[TrailEntry] = []

    def __getitem__(self, variable: int) -> Optional[bool]:
        return self._values[variable]

    def value_of(self, literal: Literal) -> Optional[bool]:
        value = self._values[literal.variable]
        if value is None:
            return None
        return value if literal.positive else not value

    def assign(self, variable: int, value: bool, reason: TrailReason) -> None:
        if self._values[variable] is not None:
            raise ValidationError(f"x{variable} is already assigned.", code="trail")
        self._values[variable] = value
        self.trail.append(TrailEntry(variable, value, reason))

    def satisfy(self, literal: Literal, reason: TrailReason) -> None:
        self.assign(literal.variable, literal.positive, reason)

    def mark(self) -> int:
        return len(self.trail)

    def backtrack(self, mark: int) -> None:
        while len(self.trail) > mark:
            self._values[self.trail.pop().variable] = None

    def unassigned(self) -> Iterator[int]:
        return (v for v in range(1, self.num_vars + 1) if self._values[v] is None)

    @property
    def is_total(self) -> bool:
        return len(self.trail) == self.num_vars

    def to_assignment(self) -> Assignment:
        if not self.is_total:
            raise ValidationError("Assignment is not total.", code="partial_assignment")
        return Assignment(tuple(self._values[1:]))

    def __repr__(self) -> str:
        bits = "".join("-" if v is None else str(int(v)) for v in self._values[1:])
        return f"<PartialAssignment {bits}>"


# ------------------------------------------------------------------#
#                              Results                               #
# ------------------------------------------------------------------#
@dataclass
class SearchStats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    # total assignments and conflicts
    leaves_visited: int = 0

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)

    @property
    def tree_size(self) -> int:
        return self.decisions + self.leaves_visited


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    model: Optional[Assignment] = None
    stats: SearchStats = field(default_factory=SearchStats)
    # models met during the run: 0/1 normally, all of them with all_solutions
    num_models: int = 0

    def __post_init__(self):
        if (self.status == SolveStatus.SAT) != (self.model is not None):
            raise ValidationError("A model is present exactly when the status is SAT.", code="model")

    @property
    def is_sat(self) -> bool:
        return self.status == SolveStatus.SAT


@dataclass(frozen=True)
class ComparisonReport:
    """Side-by-side runs of a formula with and without its SBP."""

    num_vars: int
    sbp_clauses: int
    sbp_aux_vars: int
    original: SolveResult
    augmented: SolveResult
    original_models: int
    augmented_models: int
    original_explored: int
    augmented_explored: int

    @property
    def status_equal(self) -> bool:
        return self.original.status == self.augmented.status

    @property
    def pruned(self) -> int:
        return self.original_explored - self.augmented_explored
