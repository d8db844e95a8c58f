import random

from django.test import SimpleTestCase

from compilation.clauses import assign_clauses, build_clause_index
from compilation.compiler import decompose
from decompositions.models import NodeKind, TreeDecomposition
from decompositions.nice import make_nice
from formulas.models import CnfFormula
from utils.exceptions import InvalidDecomposition
from utils.testing import random_cnf


class ClauseIndexTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.formula = CnfFormula.from_ints(3, [[1, 2], [1, 3], [2, 3]])

    def test_occurrence_lists(self):
        """Verifica as listas de ocorrência por variável"""

        index = build_clause_index(self.formula)

        msg_lists = "Verifique os encadeamentos de cada variável"

        self.assertEqual(index.occurrences(1), [0, 1], msg_lists)
        self.assertEqual(index.occurrences(2), [0, 2], msg_lists)
        self.assertEqual(index.occurrences(3), [1, 2], msg_lists)

    def test_pop_variable(self):
        """Verifica se remover x1 deixa apenas a terceira cláusula"""

        index = build_clause_index(self.formula)

        self.assertEqual(index.pop_variable(1), [0, 1])
        self.assertEqual(index.remaining(), [2])
        self.assertEqual(index.occurrences(1), [])
        self.assertEqual(index.occurrences(2), [2])
        self.assertEqual(index.occurrences(3), [2])

    def test_removal_in_any_order(self):
        """Verifica os encadeamentos após remoções no meio das listas"""

        index = build_clause_index(self.formula)
        index.remove_clause(1)

        self.assertEqual(index.occurrences(1), [0])
        self.assertEqual(index.occurrences(3), [2])
        index.remove_clause(0)
        index.remove_clause(2)
        self.assertEqual(len(index), 0)
        self.assertEqual(index.heads, {})

    def test_empty_formula(self):
        """Verifica o índice da fórmula vazia"""

        index = build_clause_index(CnfFormula(3))

        self.assertEqual(len(index), 0)
        self.assertEqual(index.occurrences(1), [])

    def test_tautologies_are_skipped(self):
        """Verifica se cláusulas tautológicas ficam fora do índice"""

        index = build_clause_index(CnfFormula.from_ints(2, [[1, -1], [2]]))

        self.assertEqual(index.remaining(), [1])


class AssignClausesTests(SimpleTestCase):
    def test_single_clause(self):
        """Verifica se (x1∨x2) cai no filho do primeiro forget"""

        formula = CnfFormula.from_ints(2, [[1, 2]])
        nice = make_nice(TreeDecomposition((frozenset({1, 2}),), ((),), 0))
        assignment = assign_clauses(formula, nice)
        (node,) = assignment.home.values()

        self.assertEqual(nice.describe(nice.parent[node]), "forget(1)")
        self.assertEqual(nice.bags[node], {1, 2})

    def test_sweep(self):
        """Verifica se toda cláusula cai numa bag que contém suas variáveis"""

        rng = random.Random(53)
        for _ in range(20):
            formula = random_cnf(rng, 10, 20)
            nice = decompose(formula)
            homes = assign_clauses(formula, nice).home

            self.assertEqual(sorted(homes), list(range(len(formula.clauses))))
            for clause_id, node in homes.items():
                self.assertLessEqual(formula.clauses[clause_id].variables, nice.bags[node])
                self.assertIs(nice.kinds[nice.parent[node]], NodeKind.FORGET)

    def test_empty_formula(self):
        """Verifica se a fórmula vazia não preenche nenhum balde"""

        formula = CnfFormula(2)
        assignment = assign_clauses(formula, decompose(formula))

        self.assertEqual(assignment.buckets, {})

    def test_empty_clause_goes_to_root(self):
        """Verifica se a cláusula vazia fica na raiz"""

        formula = CnfFormula.from_ints(1, [[1], []])
        nice = decompose(formula)

        self.assertEqual(assign_clauses(formula, nice).at(nice.root), (1,))

    def test_missing_variable(self):
        """Verifica se uma decomposição sem a variável da cláusula é recusada"""

        formula = CnfFormula.from_ints(2, [[2]])
        nice = make_nice(TreeDecomposition((frozenset({1}),), ((),), 0))

        with self.assertRaises(InvalidDecomposition):
            assign_clauses(formula, nice)
