"""
sbp/services.py
Symmetry-breaking predicates: lex-leader bit/permutation predicates with
folding and per-bit tautology elimination, the pairwise swap construction,
clause conversion with definition variables, and conjunction with the
source formula.
"""

from __future__ import annotations

import logging
from typing import Dict, Final, List

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from automorphism.models import GeneratorSet, cycle_notation
from cnf.models import Clause, CnfFormula, Literal, LiteralPermutation
from cnf.services import assignment_matrix, write_clauses

from .models import (
    FALSE,
    TRUE,
    And,
    Const,
    Iff,
    Implies,
    Leq,
    Lit,
    Not,
    Or,
    PairwiseInapplicable,
    PredicateFormula,
    SbpClauses,
    SbpMethod,
    Simplification,
)

logger: Final = logging.getLogger(__name__)


# ------------------------------------------------------------------ #
#                          Lex-leader pieces                         #
# ------------------------------------------------------------------ #
def _image(perm: LiteralPermutation, variable: int) -> Lit:
    return Lit(perm(Literal(variable)))


def bit_predicate(perm: LiteralPermutation, i: int, n: int) -> PredicateFormula:
    """[x_1 = x_1^p ... x_{i-1} = x_{i-1}^p] -> (x_i <= x_i^p); the bare atom for i = 1."""
    if perm.num_vars != n:
        raise ValidationError(f"Permutation acts on {perm.num_vars} variables, not {n}.", code="arity")
    if not 1 <= i <= n:
        raise ValidationError(f"Bit index {i} is outside 1..{n}.", code="index_range")
    atom = Leq(Lit(Literal(i)), _image(perm, i))
    if i == 1:
        return atom
    antecedent = And(tuple(Iff(Lit(Literal(j)), _image(perm, j)) for j in range(1, i)))
    return Implies(antecedent, atom)


def permutation_predicate(perm: LiteralPermutation, n: int) -> PredicateFormula:
    """Conjunction of the simplified bit predicates of ``perm``."""
    bits = [simplify(bit_predicate(perm, i, n)).formula for i in range(1, n + 1)]
    return fold(And(tuple(bits)))


# ------------------------------------------------------------------ #
#                            Simplification                          #
# ------------------------------------------------------------------ #
def _is_literal(node: PredicateFormula) -> bool:
    return isinstance(node, Lit) or (isinstance(node, Not) and isinstance(node.child, Lit))


def _complementary(a: PredicateFormula, b: PredicateFormula) -> bool:
    if isinstance(a, Lit) and isinstance(b, Lit):
        return a.literal == b.literal.negate()
    return a == Not(b) or b == Not(a)


def _fold_junction(node, kind, unit: Const, zero: Const) -> PredicateFormula:
    flat: List[PredicateFormula] = []
    for child in node.children:
        child = fold(child)
        if child == zero:
            return zero
        if child == unit:
            continue
        flat.extend(child.children if isinstance(child, kind) else (child,))
    flat = list(dict.fromkeys(flat))
    if not flat:
        return unit
    if len(flat) == 1:
        return flat[0]
    return kind(tuple(flat))


def fold(node: PredicateFormula) -> PredicateFormula:
    """Constant folding and the trivial identities (a = a, a <= a, ...)."""
    if isinstance(node, (Const, Lit)):
        return node

    if isinstance(node, Not):
        child = fold(node.child)
        if isinstance(child, Const):
            return Const(not child.truth)
        if isinstance(child, Not):
            return child.child
        if isinstance(child, Lit):
            return Lit(child.literal.negate())
        return Not(child)

    if isinstance(node, And):
        return _fold_junction(node, And, TRUE, FALSE)
    if isinstance(node, Or):
        return _fold_junction(node, Or, FALSE, TRUE)

    if isinstance(node, (Implies, Leq)):
        if isinstance(node, Implies):
            a, c = fold(node.antecedent), fold(node.consequent)
        else:
            a, c = fold(node.left), fold(node.right)
        if a == c or a == FALSE or c == TRUE:
            return TRUE
        if a == TRUE:
            return c
        if c == FALSE:
            return fold(Not(a))
        return type(node)(a, c)

    if isinstance(node, Iff):
        a, b = fold(node.left), fold(node.right)
        if a == b:
            return TRUE
        if _complementary(a, b):
            return FALSE
        if isinstance(a, Const) and isinstance(b, Const):
            return Const(a.truth == b.truth)
        for x, y in ((a, b), (b, a)):
            if x == TRUE:
                return y
            if x == FALSE:
                return fold(Not(y))
        return Iff(a, b)

    raise TypeError(f"Unknown formula node {node!r}")


def is_tautology(formula: PredicateFormula) -> bool:
    """Exhaustive check over the formula's own variables."""
    variables = sorted(formula.variables())
    bits = assignment_matrix(len(variables))
    columns: Dict[int, np.ndarray] = {v: bits[:, k] for k, v in enumerate(variables)}
    return bool(np.broadcast_to(formula.value(columns), (bits.shape[0],)).all())


def simplify(formula: PredicateFormula) -> Simplification:
    """Fold, then replace every tautological conjunct by true.

    Conjuncts over more than ``SYMBREAK_SIMPLIFY_MAX_VARS`` variables are
    kept as folded and the result is flagged incomplete.
    """
    limit = int(getattr(settings, "SYMBREAK_SIMPLIFY_MAX_VARS", 16))
    folded = fold(formula)
    conjuncts = folded.children if isinstance(folded, And) else (folded,)

    kept: List[PredicateFormula] = []
    complete = True
    for conjunct in conjuncts:
        if isinstance(conjunct, Const):
            kept.append(conjunct)
            continue
        width = len(conjunct.variables())
        if width > limit:
            complete = False
            logger.warning("Conjunct over %d variables left unsimplified (SYMBREAK_SIMPLIFY_MAX_VARS=%d)", width, limit)
            kept.append(conjunct)
        elif not is_tautology(conjunct):
            kept.append(conjunct)

    return Simplification(fold(And(tuple(kept))), complete)


# ------------------------------------------------------------------ #
#                          Clause conversion                         #
# ------------------------------------------------------------------ #
def to_cnf(formula: PredicateFormula, first_fresh_var: int, method: SbpMethod = SbpMethod.LEX) -> SbpClauses:
    """Equisatisfiable clauses for ``formula``.

    Required disjunctions of literals become clauses as they are; any other
    subformula gets one definition variable, numbered densely from
    ``first_fresh_var``.
    """
    clauses: List[Clause] = []
    defined: Dict[PredicateFormula, Literal] = {}
    next_var = [first_fresh_var]

    def fresh() -> Literal:
        lit = Literal(next_var[0])
        next_var[0] += 1
        return lit

    def literal_of(node: PredicateFormula) -> Literal:
        if isinstance(node, Lit):
            return node.literal
        if isinstance(node, Not):
            return literal_of(node.child).negate()
        if node in defined:
            return defined[node]

        if isinstance(node, Const):
            aux = fresh()
            clauses.append(Clause((aux if node.truth else aux.negate(),)))
        elif isinstance(node, And):
            children = [literal_of(c) for c in node.children]
            aux = fresh()
            clauses.append(Clause(tuple(c.negate() for c in children) + (aux,)))
            clauses.extend(Clause((aux.negate(), c)) for c in children)
        elif isinstance(node, Or):
            children = [literal_of(c) for c in node.children]
            aux = fresh()
            clauses.append(Clause(tuple(children) + (aux.negate(),)))
            clauses.extend(Clause((c.negate(), aux)) for c in children)
        elif isinstance(node, (Implies, Leq)):
            a, c = (node.antecedent, node.consequent) if isinstance(node, Implies) else (node.left, node.right)
            la, lc = literal_of(a), literal_of(c)
            aux = fresh()
            clauses.append(Clause((aux.negate(), la.negate(), lc)))
            clauses.append(Clause((aux, la)))
            clauses.append(Clause((aux, lc.negate())))
        elif isinstance(node, Iff):
            la, lb = literal_of(node.left), literal_of(node.right)
            aux = fresh()
            clauses.append(Clause((aux.negate(), la.negate(), lb)))
            clauses.append(Clause((aux.negate(), la, lb.negate())))
            clauses.append(Clause((aux, la, lb)))
            clauses.append(Clause((aux, la.negate(), lb.negate())))
        else:
            raise TypeError(f"Unknown formula node {node!r}")

        defined[node] = aux
        return aux

    def require(node: PredicateFormula) -> None:
        if node == TRUE:
            return
        if isinstance(node, And):
            for child in node.children:
                require(child)
        elif isinstance(node, Or):
            clauses.append(Clause(tuple(literal_of(c) for c in node.children)))
        elif isinstance(node, Implies):
            clauses.append(Clause((literal_of(node.antecedent).negate(), literal_of(node.consequent))))
        elif isinstance(node, Leq):
            clauses.append(Clause((literal_of(node.left).negate(), literal_of(node.right))))
        elif isinstance(node, Iff):
            la, lb = literal_of(node.left), literal_of(node.right)
            clauses.append(Clause((la.negate(), lb)))
            clauses.append(Clause((la, lb.negate())))
        else:
            clauses.append(Clause((literal_of(node),)))

    require(formula)
    num_aux = next_var[0] - first_fresh_var
    logger.debug("to_cnf: %d clauses, %d aux variables from x%d", len(clauses), num_aux, first_fresh_var)
    return SbpClauses(tuple(clauses), first_fresh_var, num_aux, method)


# ------------------------------------------------------------------ #
#                            Constructions                           #
# ------------------------------------------------------------------ #
def lex_leader_sbp(gens: GeneratorSet, n: int) -> SbpClauses:
    """Conjunction of the permutation predicates of every generator, as clauses."""
    if gens.num_vars != n:
        raise ValidationError(f"Generators act on {gens.num_vars} variables, not {n}.", code="arity")
    predicate = fold(And(tuple(permutation_predicate(gen, n) for gen in gens)))
    sbp = to_cnf(predicate, n + 1, SbpMethod.LEX)
    logger.info("Lex-leader SBP: %d clause(s), %d aux variable(s) from %d generator(s)",
                len(sbp), sbp.num_aux_vars, len(gens))
    return sbp


def _swaps(gen: LiteralPermutation) -> List[Clause]:
    out: List[Clause] = []
    for cycle in gen.cycles():
        if not cycle[0].positive:
            # complement of a positive cycle
            continue
        if len(cycle) > 2 or not all(lit.positive for lit in cycle):
            raise PairwiseInapplicable(
                f"Generator {cycle_notation(gen)} is not a product of variable swaps."
            )
        first, second = cycle
        out.append(Clause((first.negate(), second)))
    return out


def pairwise_sbp(gens: GeneratorSet) -> SbpClauses:
    """One clause (~x_i + x_j) per swap (x_i x_j), i < j, of every generator."""
    emitted: List[Clause] = []
    for gen in gens:
        swaps = _swaps(gen)
        if len(swaps) > 1:
            logger.warning(
                "Pairwise SBP for %s constrains %d swaps independently; it may exclude whole orbits.",
                cycle_notation(gen), len(swaps),
            )
        emitted.extend(swaps)
    clauses = tuple(dict.fromkeys(emitted))
    logger.info("Pairwise SBP: %d clause(s) from %d generator(s)", len(clauses), len(gens))
    return SbpClauses(clauses, gens.num_vars + 1, 0, SbpMethod.PAIRWISE)


def build_sbp(gens: GeneratorSet, method: str = SbpMethod.LEX) -> SbpClauses:
    if method == SbpMethod.PAIRWISE:
        return pairwise_sbp(gens)
    return lex_leader_sbp(gens, gens.num_vars)


# ------------------------------------------------------------------ #
#                             Conjunction                            #
# ------------------------------------------------------------------ #
def conjoin(formula: CnfFormula, sbp: SbpClauses) -> CnfFormula:
    """``formula`` followed by the SBP clauses, aux variables appended."""
    if sbp.num_aux_vars and sbp.first_aux_var != formula.num_vars + 1:
        raise ValidationError(
            f"SBP aux variables start at x{sbp.first_aux_var}, expected x{formula.num_vars + 1}.",
            code="index_overlap",
        )
    if sbp.source_vars > formula.num_vars:
        raise ValidationError(
            f"SBP was built for {sbp.source_vars} variables, formula has {formula.num_vars}.",
            code="index_overlap",
        )
    if not sbp.clauses:
        return formula
    return CnfFormula(
        formula.num_vars + sbp.num_aux_vars,
        formula.clauses + sbp.clauses,
        source_vars=formula.original_vars,
        source_clauses=formula.num_clauses if formula.source_clauses is None else formula.source_clauses,
    )


def write_fragment(sbp: SbpClauses) -> str:
    """DIMACS clause lines without a header, for appending to a file."""
    return write_clauses(sbp.clauses)
