"""
cnf/services.py
DIMACS reading/writing, evaluation and the brute-force oracles
(truth table, symmetry enumeration, group closure) that every other
app is checked against.
"""

from __future__ import annotations

import io
import itertools
import logging
from collections import deque
from typing import Final, Hashable, Iterable, List, Optional, Sequence, Set, TextIO, Tuple, TypeVar, Union

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from .models import Assignment, Clause, CnfFormula, DimacsError, LiteralPermutation

logger: Final = logging.getLogger(__name__)

G = TypeVar("G", bound=Hashable)


# ------------------------------------------------------------------ #
#                               Guards                               #
# ------------------------------------------------------------------ #
def check_guard(count: int, setting: str, default: int, what: str) -> None:
    limit = int(getattr(settings, setting, default))
    if count > limit:
        raise ValidationError(
            f"{what} needs {count} variables; the limit is {limit} ({setting}).",
            code="guard",
        )


# ------------------------------------------------------------------ #
#                               DIMACS                               #
# ------------------------------------------------------------------ #
def parse_dimacs(text: Union[str, TextIO, Iterable[str]]) -> CnfFormula:
    """Parse DIMACS CNF. Clauses may span lines; ``%`` ends the clause section."""
    lines = io.StringIO(text) if isinstance(text, str) else text

    num_vars: Optional[int] = None
    declared = 0
    clauses: List[Clause] = []
    comments: List[str] = []
    pending: List[int] = []
    lineno = 0

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            fields = line.split()
            if num_vars is not None:
                raise DimacsError("Second header line.", line=lineno, code="header")
            if len(fields) != 4 or fields[1] != "cnf":
                raise DimacsError(f"Bad header {line!r}; expected 'p cnf <n> <m>'.", line=lineno, code="header")
            try:
                num_vars, declared = int(fields[2]), int(fields[3])
            except ValueError:
                raise DimacsError(f"Bad header {line!r}; counts must be integers.", line=lineno, code="header")
            if num_vars < 1 or declared < 0:
                raise DimacsError(f"Bad header {line!r}; counts out of range.", line=lineno, code="header")
            continue
        if num_vars is None:
            raise DimacsError("Clause data before the 'p cnf' header.", line=lineno, code="header")

        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise DimacsError(f"Non-integer token {token!r}.", line=lineno, code="literal")
            if value == 0:
                if not pending:
                    raise DimacsError("Zero-length clause.", line=lineno, code="empty_clause")
                clauses.append(Clause.of(*pending))
                pending = []
                continue
            if abs(value) > num_vars:
                raise DimacsError(
                    f"Literal {value} exceeds the declared {num_vars} variables.",
                    line=lineno,
                    code="variable_range",
                )
            pending.append(value)

    if num_vars is None:
        raise DimacsError("Missing 'p cnf' header.", line=lineno, code="header")
    if pending:
        raise DimacsError("Last clause is not terminated by 0.", line=lineno, code="clause_count")
    if len(clauses) != declared:
        raise DimacsError(
            f"Header declares {declared} clauses, found {len(clauses)}.",
            line=lineno,
            code="clause_count",
        )

    logger.debug("Parsed DIMACS: %d vars, %d clauses", num_vars, declared)
    return CnfFormula(num_vars, tuple(clauses), comments=tuple(comments))


def write_clauses(clauses: Iterable[Clause]) -> str:
    """Clause lines only, no header."""
    return "".join(" ".join(str(v) for v in clause.to_dimacs()) + " 0\n" for clause in clauses)


def write_dimacs(formula: CnfFormula) -> str:
    return f"p cnf {formula.num_vars} {formula.num_clauses}\n" + write_clauses(formula.clauses)


# ------------------------------------------------------------------ #
#                             Evaluation                             #
# ------------------------------------------------------------------ #
def evaluate(formula: CnfFormula, assignment: Assignment) -> bool:
    if assignment.num_vars != formula.num_vars:
        raise ValidationError(
            f"Assignment covers {assignment.num_vars} variables, formula has {formula.num_vars}.",
            code="partial_assignment",
        )
    return all(clause.satisfied_by(assignment) for clause in formula.clauses)


def assignment_matrix(num_vars: int) -> np.ndarray:
    """All 2^n assignments as a bool matrix, X1 most significant, 0 before 1."""
    rows = np.arange(1 << num_vars, dtype=np.int64)
    shifts = np.arange(num_vars - 1, -1, -1, dtype=np.int64)
    return ((rows[:, None] >> shifts) & 1).astype(bool)


def satisfying_mask(formula: CnfFormula) -> np.ndarray:
    """Vectorised truth-table column: mask[r] is the value at row r."""
    check_guard(formula.num_vars, "SYMBREAK_TRUTH_TABLE_MAX_VARS", 20, "Truth table")
    bits = assignment_matrix(formula.num_vars)
    mask = np.ones(bits.shape[0], dtype=bool)
    for clause in formula.clauses:
        sat = np.zeros(bits.shape[0], dtype=bool)
        for lit in clause:
            column = bits[:, lit.variable - 1]
            sat |= column if lit.positive else ~column
        mask &= sat
    return mask


def truth_table(formula: CnfFormula) -> List[Tuple[Assignment, bool]]:
    mask = satisfying_mask(formula)
    bits = assignment_matrix(formula.num_vars)
    return [(Assignment(tuple(row)), bool(value)) for row, value in zip(bits.tolist(), mask.tolist())]


def is_satisfiable(formula: CnfFormula) -> bool:
    """Truth-table oracle for SAT status."""
    return bool(satisfying_mask(formula).any())


# ------------------------------------------------------------------ #
#                             Symmetries                             #
# ------------------------------------------------------------------ #
def _check_arity(formula: CnfFormula, perm: LiteralPermutation) -> None:
    if perm.num_vars != formula.num_vars:
        raise ValidationError(
            f"Permutation acts on {perm.num_vars} variables, formula has {formula.num_vars}.",
            code="arity",
        )


def apply_permutation(formula: CnfFormula, perm: LiteralPermutation) -> CnfFormula:
    _check_arity(formula, perm)
    clauses = tuple(Clause(tuple(perm(lit) for lit in clause)) for clause in formula.clauses)
    return CnfFormula(formula.num_vars, clauses)


def is_symmetry(formula: CnfFormula, perm: LiteralPermutation) -> bool:
    """True iff the permutation maps the clause multiset onto itself."""
    return apply_permutation(formula, perm).clause_multiset() == formula.clause_multiset()


def brute_force_symmetries(formula: CnfFormula) -> List[LiteralPermutation]:
    """Every variable permutation times every polarity flip that is a symmetry.

    Identity comes first.
    """
    n = formula.num_vars
    check_guard(n, "SYMBREAK_BRUTE_FORCE_MAX_VARS", 6, "Brute-force symmetry search")
    found: List[LiteralPermutation] = []
    for order in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            perm = LiteralPermutation(tuple(s * v for s, v in zip(signs, order)))
            if is_symmetry(formula, perm):
                found.append(perm)
    logger.debug("Brute force: %d symmetries over %d variables", len(found), n)
    return found


# ------------------------------------------------------------------ #
#                          Groups and orbits                         #
# ------------------------------------------------------------------ #
def generate_group(generators: Sequence[G], identity: G, limit: Optional[int] = None) -> Set[G]:
    """Closure of ``generators`` under composition (``*``), identity included.

    With ``limit``, a closure growing past ``limit`` elements raises a
    ``guard`` ValidationError.
    """
    group: Set[G] = {identity}
    queue: deque = deque([identity])
    while queue:
        element = queue.popleft()
        for gen in generators:
            product = element * gen
            if product not in group:
                group.add(product)
                if limit is not None and len(group) > limit:
                    raise ValidationError(f"Group closure exceeds {limit} elements.", code="guard")
                queue.append(product)
    return group


def orbit(assignment: Assignment, group: Iterable[LiteralPermutation]) -> Set[Assignment]:
    return {perm.act(assignment) for perm in group}


def lex_min(assignments: Iterable[Assignment]) -> Assignment:
    """Lexicographically smallest assignment (X1 most significant, 0 < 1)."""
    return min(assignments)
