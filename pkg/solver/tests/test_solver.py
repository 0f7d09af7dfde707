from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from cnf.models import Assignment, CnfFormula, Literal
from cnf.services import evaluate, is_satisfiable, satisfying_mask
from cnf.tests.factories import random_corpus, running_example, table_one_formula

from solver.models import PartialAssignment, SolveStatus, TrailReason
from solver.services import format_result, solve, unit_propagate

# running example plus the lex-leader clause (~x3 + x4)
THETA_PRIME = CnfFormula.of(5, (1, -2, 3, 4, 5), (2, -3, -4, 5), (-1, 2, -5), (-3, 4))


class PartialAssignmentTests(SimpleTestCase):
    def test_backtrack_restores_state(self):
        pa = PartialAssignment(3)
        pa.assign(1, True, TrailReason.DECISION)
        mark = pa.mark()
        pa.assign(2, False, TrailReason.PROPAGATED)
        pa.assign(3, True, TrailReason.DECISION)
        pa.backtrack(mark)
        self.assertEqual([pa[v] for v in (1, 2, 3)], [True, None, None])
        self.assertEqual(list(pa.unassigned()), [2, 3])

    def test_unique_trail_entries(self):
        pa = PartialAssignment(1)
        pa.assign(1, False, TrailReason.DECISION)
        with self.assertRaises(ValidationError):
            pa.assign(1, True, TrailReason.DECISION)

    def test_value_of_literal(self):
        pa = PartialAssignment(2)
        pa.assign(1, False, TrailReason.DECISION)
        self.assertTrue(pa.value_of(Literal(1, False)))
        self.assertIsNone(pa.value_of(Literal(2)))


class UnitPropagateTests(SimpleTestCase):
    def test_forced_chain(self):
        pa = PartialAssignment(2)
        self.assertIsNone(unit_propagate(CnfFormula.of(2, (1,), (-1, 2)), pa))
        self.assertEqual((pa[1], pa[2]), (True, True))
        self.assertTrue(all(e.reason == TrailReason.PROPAGATED for e in pa.trail))

    def test_contradictory_units(self):
        pa = PartialAssignment(1)
        self.assertIsNotNone(unit_propagate(CnfFormula.of(1, (1,), (-1,)), pa))

    def test_sbp_clause_propagates(self):
        pa = PartialAssignment(5)
        pa.assign(3, True, TrailReason.DECISION)
        self.assertIsNone(unit_propagate(THETA_PRIME, pa))
        self.assertTrue(pa[4])


class SolveTests(SimpleTestCase):
    def test_table_one_first_model(self):
        result = solve(table_one_formula())
        self.assertEqual(result.status, SolveStatus.SAT)
        self.assertEqual(result.model, Assignment.from_bits([0, 0]))

    def test_unsat(self):
        result = solve(CnfFormula.of(1, (1,), (-1,)))
        self.assertEqual(result.status, SolveStatus.UNSAT)
        self.assertIsNone(result.model)
        self.assertEqual(result.stats.decisions, 0)
        self.assertEqual(result.stats.conflicts, 1)

    def test_running_example_tree(self):
        result = solve(running_example(), all_solutions=True)
        self.assertEqual(result.num_models, 25)
        self.assertEqual(result.stats.decisions, 48)
        self.assertEqual(result.stats.leaves_visited, 25)
        self.assertEqual(result.stats.conflicts, 0)

    def test_sbp_shrinks_the_tree(self):
        before = solve(running_example(), all_solutions=True)
        after = solve(THETA_PRIME, all_solutions=True)
        self.assertEqual(after.num_models, 18)
        self.assertEqual(after.stats.decisions, 36)
        self.assertEqual(after.stats.leaves_visited, 19)
        self.assertEqual(after.stats.conflicts, 1)
        self.assertLess(after.stats.tree_size, before.stats.tree_size)

    def test_assumptions(self):
        result = solve(table_one_formula(), assumptions=[Literal(1)])
        self.assertEqual(result.model, Assignment.from_bits([1, 1]))
        self.assertEqual(result.stats.decisions, 0)
        contradiction = solve(table_one_formula(), assumptions=[Literal(1), Literal(1, False)])
        self.assertEqual(contradiction.status, SolveStatus.UNSAT)

    def test_deterministic(self):
        f = running_example()
        first, second = solve(f), solve(f)
        self.assertEqual(first.model, second.model)
        self.assertEqual(first.stats, second.stats)

    def test_agrees_with_truth_table(self):
        corpus = random_corpus(1000, seed=2024, min_vars=1, max_vars=10, cover_all=False)
        for f in corpus:
            result = solve(f)
            self.assertEqual(result.is_sat, is_satisfiable(f), msg=str(f))
            if result.is_sat:
                self.assertTrue(evaluate(f, result.model))

    def test_all_solutions_counts_models(self):
        for f in random_corpus(100, seed=8, max_vars=6):
            result = solve(f, all_solutions=True)
            self.assertEqual(result.num_models, int(satisfying_mask(f).sum()))

    def test_deep_tree(self):
        n = 2000
        result = solve(CnfFormula.of(n, tuple(range(1, n + 1))))
        self.assertTrue(result.is_sat)
        self.assertEqual(result.model.to_dimacs(), [-v for v in range(1, n)] + [n])
        self.assertEqual(result.stats.decisions, n - 1)
        self.assertEqual(result.stats.propagations, 1)

    def test_deep_backtrack(self):
        n = 2000
        result = solve(CnfFormula.of(n, tuple(range(1, n + 1)), (n - 1, -n)))
        self.assertTrue(result.is_sat)
        self.assertEqual(result.model.to_dimacs(), [-v for v in range(1, n - 1)] + [n - 1, -n])
        self.assertEqual(result.stats.decisions, n + 1)
        self.assertEqual(result.stats.conflicts, 1)


class FormatResultTests(SimpleTestCase):
    def test_sat(self):
        text = format_result(solve(table_one_formula()))
        self.assertEqual(text.splitlines()[:2], ["s SATISFIABLE", "v -1 -2 0"])
        self.assertIn("c decisions: 1", text)

    def test_unsat(self):
        text = format_result(solve(CnfFormula.of(1, (1,), (-1,))))
        self.assertTrue(text.startswith("s UNSATISFIABLE\n"))
        self.assertNotIn("\nv ", text)

    def test_model_restricted(self):
        text = format_result(solve(CnfFormula.of(3, (1,))), num_vars=2)
        self.assertIn("v 1 -2 0", text)
