import random

from django.test import SimpleTestCase, override_settings

from circuits.tests.fixtures import equivalence_circuit
from formulas.models import CnfFormula, QbfFormula
from formulas.parsers import parse_qdimacs
from oracles.bruteforce import (
    cnf_model_count,
    cnf_truth_table,
    qbf_count,
    qbf_eval,
    qbf_eval_flat,
    shape_oracle,
)
from utils.exceptions import MissingVariable, OracleLimitExceeded
from utils.testing import assignments, random_cnf, random_qbf


class CnfOracleTests(SimpleTestCase):
    def test_examples(self):
        """Verifica tabelas de fórmulas pequenas"""

        self.assertTrue(cnf_truth_table(CnfFormula(2)).all())
        self.assertFalse(cnf_truth_table(CnfFormula.from_ints(1, [[1], [-1]])).any())
        self.assertEqual(cnf_model_count(CnfFormula.from_ints(2, [[1, 2]])), 3)

    def test_bit_order(self):
        """Verifica se o bit v - 1 da linha é o valor de v"""

        table = cnf_truth_table(CnfFormula.from_ints(3, [[3], [-1]]))

        self.assertEqual([i for i, value in enumerate(table) if value], [4, 6])

    def test_against_clause_evaluation(self):
        """Verifica a tabela contra a avaliação cláusula a cláusula"""

        rng = random.Random(227)
        formula = random_cnf(rng, 7, 10)
        table = cnf_truth_table(formula)

        for index in range(2**7):
            self.assertEqual(bool(table[index]), formula.evaluate(assignments(formula.variables, index)))

    @override_settings(KNOWLEDGE_COMPILER={"ORACLE_MAX_VARS": 4})
    def test_size_cap(self):
        """Verifica o limite de variáveis do oráculo"""

        with self.assertRaises(OracleLimitExceeded):
            cnf_truth_table(CnfFormula(5))


class QbfOracleTests(SimpleTestCase):
    def test_no_prefix(self):
        """Verifica se sem prefixo a contagem é a da CNF"""

        rng = random.Random(229)
        matrix = random_cnf(rng, 6, 8)

        self.assertEqual(qbf_count(QbfFormula((), matrix)), cnf_model_count(matrix))

    def test_exists_literal(self):
        """Verifica ∃x (x) = verdadeiro"""

        qbf = parse_qdimacs("p cnf 1 1\ne 1 0\n1 0\n")

        self.assertTrue(qbf_eval(qbf))
        self.assertTrue(qbf_eval_flat(qbf))

    def test_free_assignment(self):
        """Verifica a avaliação com variáveis livres"""

        qbf = parse_qdimacs("p cnf 2 1\na 2 0\n1 2 0\n")

        self.assertTrue(qbf_eval(qbf, {1: True}))
        self.assertFalse(qbf_eval(qbf, {1: False}))
        self.assertEqual(qbf_count(qbf), 1)
        with self.assertRaises(MissingVariable):
            qbf_eval(qbf)

    def test_two_implementations_agree(self):
        """Verifica a tabela quantificada contra a expansão variável a variável"""

        rng = random.Random(233)
        for _ in range(40):
            qbf = random_qbf(rng, rng.randint(2, 8), rng.randint(1, 12), 3, free=True)
            free = qbf.free_variables
            for index in range(2 ** len(free)):
                tau = assignments(free, index)
                self.assertEqual(qbf_eval(qbf, tau), qbf_eval_flat(qbf, tau))


class ShapeOracleTests(SimpleTestCase):
    def test_nothing_forgotten(self):
        """Verifica se sem variáveis esquecidas a forma são as portas satisfeitas"""

        circuit = equivalence_circuit()

        self.assertEqual(shape_oracle(circuit, 2, {1: True, 2: True}, ()), {7})
        self.assertEqual(shape_oracle(circuit, 2, {1: True, 2: False}, ()), {8})

    def test_leaves(self):
        """Verifica formas nas folhas"""

        circuit = equivalence_circuit()

        self.assertEqual(shape_oracle(circuit, 0, {1: False}, ()), {1})
        self.assertEqual(shape_oracle(circuit, 0, {}, {1}), {0, 1})

    def test_forgotten_variable(self):
        """Verifica a forma com x2 esquecida"""

        circuit = equivalence_circuit()

        self.assertEqual(shape_oracle(circuit, 2, {1: True}, {2}), {7, 8})
        self.assertEqual(shape_oracle(circuit, 2, {1: False}, {2}), {7})
