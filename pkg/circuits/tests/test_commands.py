import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from circuits.formats import save_circuit

from .fixtures import duplicated_and_circuit, equivalence_circuit


class CircuitCommandTestCase(SimpleTestCase):
    def setUp(self) -> None:
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.root = Path(directory.name)

    def write(self, name: str, text: str) -> Path:
        path = self.root / name
        path.write_text(text)

        return path


class CountCommandTests(CircuitCommandTestCase):
    def test_constant_outputs(self):
        """Verifica a contagem de tautologia e contradição sobre 3 variáveis"""

        cases = [
            ("p cnf 3 1\n1 -1 0\n", "8"),
            ("p cnf 3 2\n1 0\n-1 0\n", "0"),
        ]
        for text, expected in cases:
            with self.subTest(expected=expected):
                formula = self.write("formula.cnf", text)
                call_command("compile", str(formula), stdout=StringIO())

                out = StringIO()
                call_command("count", str(self.root / "formula.sdnnf"), stdout=out)
                self.assertEqual(out.getvalue().strip(), expected)

    def test_named_output(self):
        """Verifica a contagem de uma saída escolhida"""

        save_circuit(equivalence_circuit(), self.root / "eq")
        out = StringIO()
        call_command("count", str(self.root / "eq.sdnnf"), output="other", stdout=out)

        self.assertEqual(out.getvalue().strip(), "1")

    def test_missing_output(self):
        """Saída inexistente deve falhar"""

        save_circuit(equivalence_circuit(), self.root / "eq")

        with self.assertRaises(CommandError) as context:
            call_command("count", str(self.root / "eq.sdnnf"), output="nope", stdout=StringIO())

        self.assertEqual(context.exception.returncode, 1)

    def test_non_deterministic_file(self):
        """Circuito não determinístico deve ser recusado em vez de contado"""

        save_circuit(duplicated_and_circuit(), self.root / "dup")

        with self.assertRaises(CommandError) as context:
            call_command("count", str(self.root / "dup.sdnnf"), stdout=StringIO())

        self.assertEqual(context.exception.returncode, 1)
        self.assertIn("two true inputs", str(context.exception))

    @override_settings(KNOWLEDGE_COMPILER={"VERIFY_MAX_VARS": 1})
    def test_audit_limit(self):
        """Acima do limite da auditoria só conta com --assume-deterministic"""

        save_circuit(equivalence_circuit(), self.root / "eq")
        circuit_file = str(self.root / "eq.sdnnf")

        with self.assertRaisesMessage(CommandError, "cannot audit determinism"):
            call_command("count", circuit_file, stdout=StringIO())

        out = StringIO()
        call_command("count", circuit_file, assume_deterministic=True, stdout=out)
        self.assertEqual(out.getvalue().strip(), "2")


class VerifyCommandTests(CircuitCommandTestCase):
    def test_equivalent_circuit(self):
        """Verifica estrutura, determinismo e equivalência de um circuito correto"""

        save_circuit(equivalence_circuit(), self.root / "eq")
        formula = self.write("eq.cnf", "p cnf 2 2\n-1 2 0\n1 -2 0\n")
        out = StringIO()
        call_command("verify", str(self.root / "eq.sdnnf"), str(formula), stdout=out)
        lines = out.getvalue().splitlines()

        self.assertIn("structure ok", lines)
        self.assertIn("determinism ok", lines)
        self.assertIn("equivalence ok", lines)
        self.assertIn("width 2", lines)

    def test_wrong_formula(self):
        """Circuito que difere da fórmula deve falhar"""

        save_circuit(equivalence_circuit(), self.root / "eq")
        formula = self.write("other.cnf", "p cnf 2 1\n1 2 0\n")

        with self.assertRaisesMessage(CommandError, "disagrees with the formula"):
            call_command("verify", str(self.root / "eq.sdnnf"), str(formula), stdout=StringIO())

    def test_wrong_home(self):
        """Porta mal posicionada na vtree deve falhar"""

        save_circuit(equivalence_circuit(), self.root / "eq")
        circuit_file = self.root / "eq.sdnnf"
        circuit_file.write_text(circuit_file.read_text().replace("A 4 0 2 2", "A 4 0 2 1"))

        with self.assertRaises(CommandError) as context:
            call_command("verify", str(circuit_file), stdout=StringIO())

        self.assertEqual(context.exception.returncode, 1)

    def test_not_deterministic(self):
        """Circuito com ∨ não determinístico deve falhar"""

        save_circuit(duplicated_and_circuit(), self.root / "dup")

        with self.assertRaisesMessage(CommandError, "verification failed"):
            call_command("verify", str(self.root / "dup.sdnnf"), stdout=StringIO())

    @override_settings(KNOWLEDGE_COMPILER={"VERIFY_MAX_VARS": 1})
    def test_semantic_checks_skipped(self):
        """Acima do limite só a estrutura é verificada"""

        save_circuit(duplicated_and_circuit(), self.root / "dup")
        out = StringIO()
        call_command("verify", str(self.root / "dup.sdnnf"), stdout=out)

        self.assertIn("semantic checks skipped, too many variables", out.getvalue())
