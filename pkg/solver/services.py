"""
solver/services.py
Chronological-backtracking DPLL with naive unit propagation, static
variable order X1..Xn and value 0 before 1, plus the projected counting
used to measure how much an SBP prunes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Final, Iterable, List, Optional, Sequence

import numpy as np
from django.conf import settings

from cnf.models import Clause, CnfFormula, Literal
from cnf.services import assignment_matrix, check_guard, satisfying_mask
from sbp.models import SbpClauses
from sbp.services import conjoin

from .models import (
    ComparisonReport,
    PartialAssignment,
    SearchStats,
    SolveResult,
    SolveStatus,
    TrailReason,
)

logger: Final = logging.getLogger(__name__)


# ------------------------------------------------------------------ #
#                          Unit propagation                          #
# ------------------------------------------------------------------ #
def unit_propagate(
    formula: CnfFormula,
    assignment: PartialAssignment,
    stats: Optional[SearchStats] = None,
) -> Optional[Clause]:
    """Assign forced literals until fixpoint.

    Returns the falsified clause on conflict, else None; ``assignment`` is
    extended in place either way.
    """
    changed = True
    while changed:
        changed = False
        for clause in formula.clauses:
            free: Optional[Literal] = None
            free_count = 0
            satisfied = False
            for lit in clause:
                value = assignment.value_of(lit)
                if value is None:
                    free, free_count = lit, free_count + 1
                elif value:
                    satisfied = True
                    break
            if satisfied:
                continue
            if free_count == 0:
                return clause
            if free_count == 1:
                assignment.satisfy(free, TrailReason.PROPAGATED)
                if stats is not None:
                    stats.propagations += 1
                changed = True
    return None


# ------------------------------------------------------------------ #
#                                DPLL                                #
# ------------------------------------------------------------------ #
@dataclass
class _Frame:
    """A decision node: ``mark`` is the trail before propagation, ``base`` after it."""

    variable: int
    mark: int
    base: int
    tried: int = 0


class _Search:
    def __init__(self, formula: CnfFormula, all_solutions: bool):
        self.formula = formula
        self.all_solutions = all_solutions
        self.state = PartialAssignment(formula.num_vars)
        self.stats = SearchStats()
        self.first_model = None
        self.num_models = 0

    def run(self) -> None:
        stack: List[_Frame] = []
        while True:
            mark = self.state.mark()
            if unit_propagate(self.formula, self.state, self.stats) is not None:
                self.stats.conflicts += 1
                self.stats.leaves_visited += 1
                self.state.backtrack(mark)
            else:
                variable = next(self.state.unassigned(), None)
                if variable is None:
                    self.stats.leaves_visited += 1
                    self.num_models += 1
                    if self.first_model is None:
                        self.first_model = self.state.to_assignment()
                    self.state.backtrack(mark)
                    if not self.all_solutions:
                        return
                else:
                    stack.append(_Frame(variable, mark, self.state.mark()))

            # next untried value, 0 before 1
            while stack and stack[-1].tried == 2:
                self.state.backtrack(stack.pop().mark)
            if not stack:
                return
            frame = stack[-1]
            self.state.backtrack(frame.base)
            value = frame.tried == 1
            frame.tried += 1
            self.stats.decisions += 1
            self.state.assign(frame.variable, value, TrailReason.DECISION)


def solve(
    formula: CnfFormula,
    *,
    all_solutions: bool = False,
    assumptions: Iterable[Literal] = (),
) -> SolveResult:
    """Deterministic DPLL; the first model is the lexicographically smallest one reached.

    ``assumptions`` are fixed before the search and cost no decisions. With
    ``all_solutions`` the whole tree is walked and every model counted.
    """
    search = _Search(formula, all_solutions)
    consistent = True
    for lit in assumptions:
        current = search.state.value_of(lit)
        if current is None:
            search.state.satisfy(lit, TrailReason.ASSUMPTION)
        elif not current:
            consistent = False
            break

    if consistent:
        search.run()

    if search.first_model is None:
        result = SolveResult(SolveStatus.UNSAT, None, search.stats, 0)
    else:
        result = SolveResult(SolveStatus.SAT, search.first_model, search.stats, search.num_models)
    logger.debug("solve: %s, %s", result.status, search.stats.as_dict())
    return result


# ------------------------------------------------------------------ #
#                              Counting                              #
# ------------------------------------------------------------------ #
def count_models(formula: CnfFormula, over: Optional[Sequence[int]] = None) -> int:
    """Assignments of ``over`` (default: the source variables) that extend to a model."""
    if over is None:
        over = range(1, formula.original_vars + 1)
    over = list(over)
    check_guard(len(over), "SYMBREAK_TRUTH_TABLE_MAX_VARS", 20, "Model count")

    if formula.num_vars <= int(getattr(settings, "SYMBREAK_TRUTH_TABLE_MAX_VARS", 20)):
        mask = satisfying_mask(formula)
        if not over:
            return int(mask.any())
        rows = assignment_matrix(formula.num_vars)[mask][:, [v - 1 for v in over]]
        if rows.shape[0] == 0:
            return 0
        return int(np.unique(rows, axis=0).shape[0])

    # too wide for a table: one assumption-driven solve per projected row
    count = 0
    for row in assignment_matrix(len(over)).tolist():
        lits = [Literal(v, bit) for v, bit in zip(over, row)]
        if solve(formula, assumptions=lits).is_sat:
            count += 1
    return count


def explored_assignment_count(formula: CnfFormula) -> int:
    """Source-variable assignments not ruled out by the SBP clauses alone."""
    n = formula.original_vars
    check_guard(n, "SYMBREAK_TRUTH_TABLE_MAX_VARS", 20, "Explored-assignment count")
    predicate = formula.predicate_clauses
    if not predicate:
        return 1 << n
    return count_models(CnfFormula(formula.num_vars, predicate), range(1, n + 1))


def compare_runs(formula: CnfFormula, sbp: SbpClauses) -> ComparisonReport:
    augmented = conjoin(formula, sbp)
    report = ComparisonReport(
        num_vars=formula.num_vars,
        sbp_clauses=len(sbp),
        sbp_aux_vars=sbp.num_aux_vars,
        original=solve(formula, all_solutions=True),
        augmented=solve(augmented, all_solutions=True),
        original_models=count_models(formula),
        augmented_models=count_models(augmented),
        original_explored=explored_assignment_count(formula),
        augmented_explored=explored_assignment_count(augmented),
    )
    if not report.status_equal:
        logger.error("SBP changed satisfiability: %s -> %s", report.original.status, report.augmented.status)
    logger.info("Explored assignments %d -> %d (%d pruned)",
                report.original_explored, report.augmented_explored, report.pruned)
    return report


# ------------------------------------------------------------------ #
#                              Output                                #
# ------------------------------------------------------------------ #
def format_result(result: SolveResult, num_vars: Optional[int] = None) -> str:
    """``s`` status line, ``v`` model line (first ``num_vars`` variables), ``c`` stats lines."""
    lines: List[str] = []
    if result.is_sat:
        lines.append("s SATISFIABLE")
        model = result.model if num_vars is None else result.model.restrict(num_vars)
        lines.append("v " + " ".join(str(v) for v in model.to_dimacs() + [0]))
    else:
        lines.append("s UNSATISFIABLE")
    for name, value in result.stats.as_dict().items():
        lines.append(f"c {name}: {value}")
    return "\n".join(lines) + "\n"
