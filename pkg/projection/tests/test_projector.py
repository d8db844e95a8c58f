import random

import numpy
from django.test import SimpleTestCase

from circuits.checks import check_determinism_bruteforce, check_structuredness
from circuits.evaluation import count_models, evaluate, truth_table
from circuits.tests.fixtures import duplicated_and_circuit, equivalence_circuit
from compilation.compiler import compile_cnf
from formulas.models import CnfFormula
from oracles.bruteforce import cnf_model_count, cnf_truth_table
from projection.projector import ShapeProjector, forall_project, negate, pick_output, project
from projection.shapes import normalize_root
from utils.exceptions import BudgetExceeded, MissingOutput, UnknownVariable
from utils.testing import chain_cnf, random_cnf


def quantified_table(formula: CnfFormula, kept, reduce_all: bool = False) -> numpy.ndarray:
    """Table over ``kept`` (bit i is kept[i]) of the formula with the other variables quantified."""
    full = cnf_truth_table(formula)
    rows = numpy.arange(full.size)
    index = numpy.zeros(full.size, dtype=numpy.int64)
    for bit, variable in enumerate(kept):
        index |= ((rows >> (variable - 1)) & 1) << bit
    hits = numpy.bincount(index, weights=full.astype(float), minlength=2 ** len(kept))
    if reduce_all:
        return hits == 2 ** (formula.num_vars - len(kept))

    return hits > 0


class ProjectTests(SimpleTestCase):
    def test_empty_set_is_identity_and_negation(self):
        """Verifica se Z = ∅ dá o próprio circuito e sua negação"""

        circuit = equivalence_circuit()
        projected = project(circuit, ())

        msg_exists = "Verifique a saída `exists` com Z = ∅"
        msg_not = "Verifique a saída `not_exists` com Z = ∅"

        self.assertTrue(
            numpy.array_equal(truth_table(projected, "exists"), truth_table(circuit)),
            msg_exists,
        )
        self.assertTrue(
            numpy.array_equal(truth_table(projected, "not_exists"), ~truth_table(circuit)),
            msg_not,
        )

    def test_all_variables(self):
        """Verifica se Z = todas as variáveis decide a satisfatibilidade"""

        rng = random.Random(89)
        for _ in range(10):
            formula = random_cnf(rng, 6, rng.randint(5, 30))
            circuit, _ = compile_cnf(formula)
            projected = project(circuit, circuit.variables)
            satisfiable = cnf_model_count(formula) > 0

            self.assertEqual(projected.variables, ())
            self.assertEqual(evaluate(projected, "exists", {}), satisfiable)
            self.assertEqual(evaluate(projected, "not_exists", {}), not satisfiable)

    def test_random_against_oracle(self):
        """Verifica ∃Z e ¬∃Z contra a enumeração das extensões"""

        rng = random.Random(97)
        for _ in range(15):
            formula = random_cnf(rng, 10, rng.randint(4, 25))
            circuit, _ = compile_cnf(formula)
            forgotten = set(rng.sample(formula.variables, rng.randint(1, 6)))
            kept = tuple(v for v in formula.variables if v not in forgotten)
            projected = project(circuit, forgotten)
            expected = quantified_table(formula, kept)

            self.assertTrue(
                numpy.array_equal(truth_table(projected, "exists", kept), expected)
            )
            self.assertTrue(
                numpy.array_equal(truth_table(projected, "not_exists", kept), ~expected)
            )
            self.assertLessEqual(projected.width, 2 ** max(circuit.width, 1))
            self.assertTrue(check_structuredness(projected))
            self.assertTrue(check_determinism_bruteforce(projected))

    def test_nondeterministic_input(self):
        """Verifica se a projeção de um DNNF não determinístico é determinística"""

        projected = project(duplicated_and_circuit(), ())

        self.assertTrue(projected.deterministic)
        self.assertTrue(check_determinism_bruteforce(projected))
        self.assertEqual(count_models(projected, "exists"), 1)

    def test_unknown_variable(self):
        """Verifica se Z com variável desconhecida gera erro"""

        with self.assertRaises(UnknownVariable):
            project(equivalence_circuit(), {5})

    def test_output_choice(self):
        """Verifica a escolha de saída"""

        circuit = equivalence_circuit()

        self.assertEqual(pick_output(circuit, None), "main")
        self.assertEqual(pick_output(circuit.select("other"), None), "other")
        with self.assertRaises(MissingOutput):
            pick_output(circuit.rename({"main": "first"}), None)

        projected = project(circuit, {2}, output="other")
        self.assertTrue(evaluate(projected, "exists", {1: True}))
        self.assertFalse(evaluate(projected, "exists", {1: False}))


class NegateTests(SimpleTestCase):
    def test_constant(self):
        """Verifica se a negação da constante 1 é a constante 0"""

        circuit, _ = compile_cnf(CnfFormula(2))

        self.assertEqual(count_models(negate(circuit)), 0)

    def test_double_negation(self):
        """Verifica se ¬¬c tem a tabela de c e as contagens se complementam"""

        rng = random.Random(101)
        for _ in range(10):
            formula = random_cnf(rng, rng.randint(2, 12), rng.randint(2, 20))
            circuit, _ = compile_cnf(formula)
            negated = negate(circuit)

            self.assertEqual(
                count_models(negated), 2**formula.num_vars - count_models(circuit)
            )
            self.assertTrue(
                numpy.array_equal(truth_table(negate(negated)), truth_table(circuit))
            )
            self.assertLessEqual(negated.width, 2 ** max(circuit.width, 1))


class ForallProjectTests(SimpleTestCase):
    def test_empty_set(self):
        """Verifica se ∀∅ D ≡ D"""

        circuit = equivalence_circuit()
        result = forall_project(project(circuit, ()), ())

        self.assertTrue(numpy.array_equal(truth_table(result, "exists"), truth_table(circuit)))

    def test_single_variable(self):
        """Verifica ∀x (x) = 0 e ∀x (x ∨ ¬x) = 1"""

        literal, _ = compile_cnf(CnfFormula.from_ints(1, [[1]]))
        tautology, _ = compile_cnf(CnfFormula(1))

        self.assertFalse(evaluate(forall_project(project(literal, ()), {1}), "exists", {}))
        self.assertTrue(evaluate(forall_project(project(tautology, ()), {1}), "exists", {}))

    def test_missing_dual_output(self):
        """Verifica se a falta da saída negada gera erro"""

        with self.assertRaises(MissingOutput):
            forall_project(equivalence_circuit().select("main"), {1})

    def test_random_against_oracle(self):
        """Verifica ∀Z contra a enumeração das extensões"""

        rng = random.Random(103)
        for _ in range(12):
            formula = random_cnf(rng, 8, rng.randint(1, 8), width=4)
            circuit, _ = compile_cnf(formula)
            forgotten = set(rng.sample(formula.variables, rng.randint(1, 4)))
            kept = tuple(v for v in formula.variables if v not in forgotten)
            result = forall_project(project(circuit, ()), forgotten)
            expected = quantified_table(formula, kept, reduce_all=True)

            self.assertTrue(numpy.array_equal(truth_table(result, "exists", kept), expected))
            self.assertTrue(
                numpy.array_equal(truth_table(result, "not_exists", kept), ~expected)
            )


class ProjectBudgetTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.circuit, _ = compile_cnf(chain_cnf(30))

    def test_gate_ceiling_aborts_while_building(self):
        """Verifica se o teto de portas interrompe a enumeração no meio"""

        source = normalize_root(self.circuit.select("main"))
        full = ShapeProjector(source, frozenset({3, 7})).run()
        partial = ShapeProjector(source, frozenset({3, 7}), max_gates=40, stage="exists1")

        with self.assertRaises(BudgetExceeded) as context:
            partial.run()

        self.assertEqual(context.exception.stage, "exists1")
        self.assertLess(len(partial.builder), len(full.builder))

    def test_gate_ceiling_through_project(self):
        """Verifica o teto de portas via project"""

        with self.assertRaises(BudgetExceeded) as context:
            project(self.circuit, (3,), max_gates=40)

        self.assertEqual(context.exception.stage, "project")

    def test_width_ceiling(self):
        """Verifica o teto de largura sobre o resultado"""

        width = project(self.circuit, ()).width

        with self.assertRaises(BudgetExceeded):
            project(self.circuit, (), max_width=width - 1)
        with self.assertRaises(BudgetExceeded):
            negate(self.circuit, max_width=width - 1)
