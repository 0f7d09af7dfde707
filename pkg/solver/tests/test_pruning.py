from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings

from automorphism.models import GeneratorSet
from automorphism.services import find_generators
from cnf.models import CnfFormula, Literal, LiteralPermutation
from cnf.services import generate_group, is_satisfiable, lex_min, orbit, truth_table
from cnf.tests.factories import random_corpus, running_example, table_one_formula, two_triples_formula
from sbp.models import Iff, Implies, Leq, Lit, SbpClauses
from sbp.services import conjoin, lex_leader_sbp, to_cnf

from solver.services import compare_runs, count_models, explored_assignment_count, solve

SWAP_3_4 = GeneratorSet.from_cycles(5, [(3, 4)])


def _theta_prime() -> CnfFormula:
    return conjoin(running_example(), lex_leader_sbp(SWAP_3_4, 5))


class CountModelsTests(SimpleTestCase):
    def test_table_one(self):
        self.assertEqual(count_models(table_one_formula(), [1, 2]), 2)

    def test_no_clauses(self):
        self.assertEqual(count_models(CnfFormula(3)), 8)

    def test_running_example_difference(self):
        theta, theta_prime = running_example(), _theta_prime()
        removed = sum(
            1 for a, value in truth_table(theta) if value and a[3] and not a[4]
        )
        self.assertEqual(count_models(theta), 25)
        self.assertEqual(count_models(theta_prime), 18)
        self.assertEqual(count_models(theta) - count_models(theta_prime), removed)

    def test_projection_ignores_aux(self):
        f = CnfFormula.of(4, (1, 2))
        sbp = to_cnf(Implies(Iff(Lit.of(1), Lit.of(2)), Leq(Lit.of(3), Lit.of(4))), 5)
        g = conjoin(f, sbp)
        # x1 + x2 leaves 12 rows, of which x1 = x2 = 1 with x3 = 1, x4 = 0 is cut
        self.assertEqual(count_models(g), 11)

    @override_settings(SYMBREAK_TRUTH_TABLE_MAX_VARS=5)
    def test_wide_formula_counted_with_the_solver(self):
        f = CnfFormula.of(4, (1, 2))
        sbp = to_cnf(Implies(Iff(Lit.of(1), Lit.of(2)), Leq(Lit.of(3), Lit.of(4))), 5)
        g = conjoin(f, sbp)
        self.assertGreater(g.num_vars, 5)
        self.assertEqual(count_models(g), 11)

    @override_settings(SYMBREAK_TRUTH_TABLE_MAX_VARS=3)
    def test_guard(self):
        with self.assertRaises(ValidationError) as ctx:
            count_models(CnfFormula(4))
        self.assertEqual(ctx.exception.code, "guard")


class ExploredAssignmentTests(SimpleTestCase):
    def test_running_example_numbers(self):
        self.assertEqual(explored_assignment_count(running_example()), 32)
        self.assertEqual(explored_assignment_count(_theta_prime()), 24)
        self.assertEqual(32 - explored_assignment_count(_theta_prime()), 8)

    def test_plain_input_has_nothing_pruned(self):
        self.assertEqual(explored_assignment_count(two_triples_formula()), 64)

    def test_monotone(self):
        for f in random_corpus(80, seed=23, max_vars=5):
            sbp = lex_leader_sbp(find_generators(f), f.num_vars)
            before = explored_assignment_count(f)
            after = explored_assignment_count(conjoin(f, sbp))
            self.assertLessEqual(after, before)
            if not sbp.clauses:
                self.assertEqual(after, before)


class CompareRunsTests(SimpleTestCase):
    def test_running_example(self):
        report = compare_runs(running_example(), lex_leader_sbp(SWAP_3_4, 5))
        self.assertTrue(report.status_equal)
        self.assertEqual((report.original_explored, report.augmented_explored), (32, 24))
        self.assertEqual(report.pruned, 8)
        self.assertEqual((report.original_models, report.augmented_models), (25, 18))
        self.assertLess(report.augmented.stats.tree_size, report.original.stats.tree_size)

    def test_empty_sbp(self):
        report = compare_runs(two_triples_formula(), SbpClauses.empty(6))
        self.assertEqual(report.original.stats, report.augmented.stats)
        self.assertEqual(report.pruned, 0)

    def test_random_four_variable_formulas(self):
        for f in random_corpus(60, seed=31, max_vars=4):
            report = compare_runs(f, lex_leader_sbp(find_generators(f), f.num_vars))
            self.assertTrue(report.status_equal, msg=str(f))


class SymmetryBreakingPropertyTests(SimpleTestCase):
    def test_running_example_status(self):
        self.assertEqual(solve(running_example()).status, solve(_theta_prime()).status)

    def test_satisfiability_preserved_on_corpus(self):
        for f in random_corpus(1000, seed=7, min_vars=1, max_vars=6):
            g = conjoin(f, lex_leader_sbp(find_generators(f), f.num_vars))
            self.assertEqual(solve(g).is_sat, is_satisfiable(f), msg=str(f))

    def test_lex_min_of_every_orbit_survives(self):
        for f in random_corpus(300, seed=13, min_vars=1, max_vars=5):
            gens = find_generators(f)
            g = conjoin(f, lex_leader_sbp(gens, f.num_vars))
            group = generate_group(list(gens), LiteralPermutation.identity(f.num_vars))
            models = {a for a, value in truth_table(f) if value}
            while models:
                members = orbit(next(iter(models)), group)
                leader = lex_min(members)
                lits = [Literal(v, leader[v]) for v in range(1, f.num_vars + 1)]
                self.assertTrue(solve(g, assumptions=lits).is_sat, msg=f"{f} {leader}")
                models -= members
