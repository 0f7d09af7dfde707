from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings

from cnf.models import Assignment, Clause, CnfFormula, LiteralPermutation
from cnf.services import (
    apply_permutation,
    brute_force_symmetries,
    evaluate,
    generate_group,
    is_satisfiable,
    is_symmetry,
    truth_table,
)

from .factories import random_corpus, running_example, table_one_formula, two_triples_formula


class EvaluateTests(SimpleTestCase):
    def test_table_one_rows(self):
        f = table_one_formula()
        self.assertTrue(evaluate(f, Assignment.from_bits([0, 0])))
        self.assertFalse(evaluate(f, Assignment.from_bits([0, 1])))

    def test_running_example_falsified_by_second_clause(self):
        f = running_example()
        a = Assignment.from_bits([0, 0, 1, 1, 0])
        self.assertFalse(evaluate(f, a))
        self.assertFalse(f.clauses[1].satisfied_by(a))

    def test_partial_assignment_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            evaluate(running_example(), Assignment.from_bits([0, 1]))
        self.assertEqual(ctx.exception.code, "partial_assignment")


class TruthTableTests(SimpleTestCase):
    def test_table_one(self):
        rows = truth_table(table_one_formula())
        self.assertEqual([int(v) for _, v in rows], [1, 0, 0, 1])
        self.assertEqual([str(a) for a, _ in rows], ["00", "01", "10", "11"])

    def test_empty_conjunction_is_true(self):
        rows = truth_table(CnfFormula(1))
        self.assertEqual(rows, [(Assignment.from_bits([0]), True), (Assignment.from_bits([1]), True)])

    def test_running_example_has_25_models(self):
        rows = truth_table(running_example())
        self.assertEqual(len(rows), 32)
        self.assertEqual(sum(v for _, v in rows), 25)

    def test_rows_agree_with_evaluate(self):
        for f in random_corpus(40, seed=3, max_vars=5):
            rows = truth_table(f)
            self.assertEqual(len(rows), 2 ** f.num_vars)
            for assignment, value in rows:
                self.assertEqual(value, evaluate(f, assignment))

    @override_settings(SYMBREAK_TRUTH_TABLE_MAX_VARS=4)
    def test_guard(self):
        with self.assertRaises(ValidationError) as ctx:
            truth_table(running_example())
        self.assertEqual(ctx.exception.code, "guard")

    def test_is_satisfiable(self):
        self.assertTrue(is_satisfiable(table_one_formula()))
        self.assertFalse(is_satisfiable(CnfFormula.of(1, (1,), (-1,))))


class SymmetryTests(SimpleTestCase):
    def test_swap_inside_a_clause(self):
        f = two_triples_formula()
        ab = LiteralPermutation.from_cycles(6, (1, 2))
        image = apply_permutation(f, ab)
        self.assertEqual(image.clauses, (Clause.of(2, 1, 3), Clause.of(4, 5, 6)))
        self.assertTrue(is_symmetry(f, ab))

    def test_clause_exchange(self):
        f = two_triples_formula()
        self.assertTrue(is_symmetry(f, LiteralPermutation.from_cycles(6, (1, 4), (2, 5), (3, 6))))

    def test_identity_maps_formula_to_itself(self):
        f = running_example()
        self.assertEqual(apply_permutation(f, LiteralPermutation.identity(5)), f)

    def test_running_example_symmetry(self):
        f = running_example()
        gamma = LiteralPermutation.from_cycles(5, (3, 4))
        self.assertTrue(is_symmetry(f, gamma))
        self.assertFalse(is_symmetry(f, LiteralPermutation.from_cycles(5, (1, 2))))

    def test_table_one_swap(self):
        self.assertTrue(is_symmetry(table_one_formula(), LiteralPermutation.from_cycles(2, (1, 2))))

    def test_arity_mismatch(self):
        with self.assertRaises(ValidationError):
            is_symmetry(running_example(), LiteralPermutation.identity(4))


class BruteForceSymmetryTests(SimpleTestCase):
    def test_running_example(self):
        found = brute_force_symmetries(running_example())
        self.assertEqual(found[0], LiteralPermutation.identity(5))
        self.assertEqual(set(found), {LiteralPermutation.identity(5), LiteralPermutation.from_cycles(5, (3, 4))})

    def test_two_triples(self):
        found = set(brute_force_symmetries(two_triples_formula()))
        self.assertIn(LiteralPermutation.from_cycles(6, (1, 2)), found)
        self.assertIn(LiteralPermutation.from_cycles(6, (1, 4), (2, 5), (3, 6)), found)
        # S3 wreath S2
        self.assertEqual(len(found), 72)

    def test_guard(self):
        with self.assertRaises(ValidationError):
            brute_force_symmetries(CnfFormula.of(7, (1, 7)))

    def test_result_is_a_group(self):
        for f in random_corpus(30, seed=5, max_vars=4):
            found = set(brute_force_symmetries(f))
            self.assertIn(LiteralPermutation.identity(f.num_vars), found)
            for p in found:
                self.assertIn(p.inverse(), found)
                for q in found:
                    self.assertIn(p * q, found)

    def test_evaluation_respects_symmetry(self):
        for f in random_corpus(15, seed=6, max_vars=4):
            for p in brute_force_symmetries(f):
                for assignment, value in truth_table(f):
                    self.assertEqual(evaluate(f, p.act(assignment)), value)


class GroupClosureTests(SimpleTestCase):
    def test_closure_of_transpositions(self):
        gens = [LiteralPermutation.from_cycles(3, (1, 2)), LiteralPermutation.from_cycles(3, (2, 3))]
        group = generate_group(gens, LiteralPermutation.identity(3))
        self.assertEqual(len(group), 6)

    def test_closure_limit(self):
        gens = [LiteralPermutation.from_cycles(3, (1, 2)), LiteralPermutation.from_cycles(3, (2, 3))]
        identity = LiteralPermutation.identity(3)
        self.assertEqual(len(generate_group(gens, identity, limit=6)), 6)
        with self.assertRaises(ValidationError) as ctx:
            generate_group(gens, identity, limit=5)
        self.assertEqual(ctx.exception.code, "guard")
