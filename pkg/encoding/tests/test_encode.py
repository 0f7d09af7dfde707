from collections import Counter

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from cnf.models import CnfFormula
from cnf.tests.factories import random_corpus, running_example, table_one_formula
from encoding.models import ColoredGraph, OrderedPartition, VertexKind
from encoding.services import encode, initial_coloring, to_adjacency_text, to_dot


class EncodeTests(SimpleTestCase):
    def test_running_example_counts(self):
        graph = encode(running_example())
        self.assertEqual(graph.num_vertices, 13)
        self.assertEqual(len(graph.edges), 17)
        clause_edges = [e for e in graph.edges if graph.kind(e[1]) == VertexKind.CLAUSE]
        self.assertEqual(len(clause_edges), 12)

    def test_unit_clause(self):
        graph = encode(CnfFormula.of(1, (1,)))
        self.assertEqual(graph.num_vertices, 3)
        self.assertEqual(graph.edges, frozenset({(0, 2), (0, 1)}))

    def test_table_one_shape(self):
        graph = encode(table_one_formula())
        self.assertEqual(graph.num_vertices, 6)
        self.assertEqual(len(graph.edges), 6)
        self.assertEqual([graph.label(v) for v in range(6)], ["x1", "~x1", "x2", "~x2", "c1", "c2"])

    def test_degree_identity(self):
        for formula in random_corpus(30, seed=21, max_vars=5):
            graph = encode(formula)
            occurrences = Counter(lit.index for clause in formula.clauses for lit in clause)
            for j, clause in enumerate(formula.clauses):
                self.assertEqual(graph.degree(2 * formula.num_vars + j), len(clause))
            for v in graph.literal_vertices:
                self.assertEqual(graph.degree(v), occurrences[v] + 1)

    def test_deterministic(self):
        self.assertEqual(encode(running_example()), encode(running_example()))

    def test_graph_rejects_missing_complement_edge(self):
        with self.assertRaises(ValidationError):
            ColoredGraph(1, 1, frozenset({(0, 2)}))


class InitialColoringTests(SimpleTestCase):
    def test_running_example(self):
        coloring = initial_coloring(encode(running_example()))
        self.assertEqual(coloring.cells, (tuple(range(10)), (10, 11, 12)))

    def test_unit_clause(self):
        self.assertEqual(initial_coloring(encode(CnfFormula.of(1, (1,)))).cells, ((0, 1), (2,)))

    def test_table_one(self):
        self.assertEqual(initial_coloring(encode(table_one_formula())).cells, ((0, 1, 2, 3), (4, 5)))

    def test_no_clauses_gives_single_cell(self):
        self.assertEqual(initial_coloring(encode(CnfFormula(2))).cells, ((0, 1, 2, 3),))

    def test_partition_validation(self):
        with self.assertRaises(ValidationError):
            OrderedPartition(((0, 1), (1, 2)))
        with self.assertRaises(ValidationError):
            OrderedPartition(((0,), ()))


class RenderingTests(SimpleTestCase):
    def test_dot_for_unit_clause(self):
        dot = to_dot(encode(CnfFormula.of(1, (1,))))
        self.assertEqual(
            dot,
            "graph cnf {\n"
            '  v0 [label="x1", shape=ellipse];\n'
            '  v1 [label="~x1", shape=ellipse];\n'
            '  v2 [label="c1", shape=box];\n'
            "  v0 -- v1;\n"
            "  v0 -- v2;\n"
            "}\n",
        )

    def test_dot_counts_for_running_example(self):
        dot = to_dot(encode(running_example()))
        self.assertEqual(dot.count("shape="), 13)
        self.assertEqual(dot.count(" -- "), 17)

    def test_dot_for_empty_formula(self):
        dot = to_dot(encode(CnfFormula(1)))
        self.assertIn('label="x1"', dot)
        self.assertIn('label="~x1"', dot)
        self.assertEqual(dot.count(" -- "), 1)

    def test_adjacency_text(self):
        text = to_adjacency_text(encode(CnfFormula.of(1, (1,))))
        self.assertEqual(text, "x1 [literal]: ~x1 c1\n~x1 [literal]: x1\nc1 [clause]: x1\n")
