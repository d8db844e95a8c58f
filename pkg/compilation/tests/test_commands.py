import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from circuits.checks import check_structuredness
from circuits.evaluation import count_models
from circuits.formats import load_circuit

CNF = "c (x1 or x2) and (not x2 or x3)\np cnf 3 2\n1 2 0\n-2 3 0\n"
DENSE_CNF = "p cnf 4 6\n1 2 0\n-1 3 0\n2 -4 0\n3 4 0\n1 -4 0\n-2 -3 0\n"


class CompileCommandTests(SimpleTestCase):
    def setUp(self) -> None:
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.root = Path(directory.name)
        self.source = self.root / "formula.cnf"
        self.source.write_text(CNF)

    def test_writes_circuit_and_vtree(self):
        """Verifica se o comando grava o circuito e a vtree ao lado da entrada"""

        out = StringIO()
        call_command("compile", str(self.source), stdout=out)
        circuit = load_circuit(self.root / "formula.sdnnf", deterministic=True)

        msg_files = "Verifique se <stem>.vtree foi gravado"
        self.assertTrue((self.root / "formula.vtree").exists(), msg_files)
        self.assertTrue(check_structuredness(circuit))
        self.assertEqual(count_models(circuit), 4)
        self.assertIn(f"width {circuit.width}", out.getvalue().splitlines())

    def test_stats_json_and_td(self):
        """Verifica as estatísticas em json e a decomposição gravada"""

        out = StringIO()
        call_command(
            "compile",
            str(self.source),
            out=str(self.root / "compiled"),
            td_out=str(self.root / "formula.td"),
            stats_json=True,
            stdout=out,
        )
        stats = json.loads(out.getvalue())

        expected = {"width", "gates", "vtree_nodes", "maxbag", "stage_widths", "wall_ms"}
        self.assertLessEqual(expected, set(stats))
        self.assertEqual(stats["stage_widths"], [stats["width"]])
        self.assertTrue((self.root / "compiled.sdnnf").exists())
        self.assertTrue((self.root / "formula.td").read_text().startswith("s td "))

    def test_parse_error_exit_code(self):
        """Entrada malformada deve sair com código 2"""

        self.source.write_text("p cnf 2 1\n1 x 0\n")

        with self.assertRaises(CommandError) as context:
            call_command("compile", str(self.source), stdout=StringIO())

        self.assertEqual(context.exception.returncode, 2)
        self.assertIn("line 2", str(context.exception))

    def test_gate_budget_exit_code(self):
        """Orçamento de portas estourado deve sair com código 3"""

        with self.assertRaises(CommandError) as context:
            call_command("compile", str(self.source), max_gates=1, stdout=StringIO())

        self.assertEqual(context.exception.returncode, 3)

    def test_width_budget_exit_code(self):
        """Largura acima do teto deve sair com código 3"""

        self.source.write_text(DENSE_CNF)
        out = StringIO()
        call_command("compile", str(self.source), stats_json=True, stdout=out)
        width = json.loads(out.getvalue())["width"]
        self.assertGreaterEqual(width, 2, "Verifique a fórmula de teste")

        with self.assertRaises(CommandError) as context:
            call_command("compile", str(self.source), max_width=width - 1, stdout=StringIO())

        self.assertEqual(context.exception.returncode, 3)

    def test_invalid_budget(self):
        """Orçamento não positivo deve ser recusado antes da compilação"""

        with self.assertRaisesMessage(CommandError, "invalid budget"):
            call_command("compile", str(self.source), max_gates=0, stdout=StringIO())
