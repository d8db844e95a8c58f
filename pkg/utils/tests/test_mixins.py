import json
from io import StringIO

from django.core.management.base import BaseCommand, CommandError
from django.test import SimpleTestCase, override_settings

from circuits.serializers import StatsSerializer
from utils.conf import DEFAULTS, engine_setting
from utils.exceptions import BudgetExceeded, ParseError, StructureError
from utils.mixins import EngineCommandMixin, StatsByFormatMixin
from utils.verdicts import Verdict


class StatsCommand(StatsByFormatMixin, EngineCommandMixin, BaseCommand):
    stats_serializer_class = StatsSerializer


def raising(error):
    def operation():
        raise error

    return operation


class StatsByFormatMixinTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.stats = {"width": 2, "gates": 9, "vtree_nodes": 3, "stage_widths": [2, 1]}

    def emit(self, **options) -> str:
        out = StringIO()
        StatsCommand(stdout=out).emit_stats(self.stats, options)

        return out.getvalue()

    def test_text_stats(self):
        """Verifica o formato texto, uma chave por linha"""

        lines = self.emit().splitlines()

        self.assertIn("width 2", lines)
        self.assertIn("stage_widths 2 1", lines)

    def test_json_stats(self):
        """Verifica o formato json"""

        data = json.loads(self.emit(stats_json=True))

        self.assertEqual(data["gates"], 9)
        self.assertEqual(data["stage_widths"], [2, 1])
        self.assertNotIn("wall_ms", data)

    def test_json_is_compact(self):
        """Verifica se o json sai compacto, numa única linha"""

        text = self.emit(stats_json=True).strip()

        self.assertIn('"stage_widths":[2,1]', text)
        self.assertNotIn("\n", text)


class EngineCommandMixinTests(SimpleTestCase):
    def test_exit_codes(self):
        """Verifica o código de saída de cada tipo de erro"""

        command = StatsCommand()
        cases = [
            (ParseError("bad header", line=1), 2),
            (BudgetExceeded("compile"), 3),
            (StructureError(), 1),
        ]
        for error, code in cases:
            with self.subTest(error=type(error).__name__):
                with self.assertRaises(CommandError) as context:
                    command.run_engine(raising(error))
                self.assertEqual(context.exception.returncode, code)

    def test_message_kept(self):
        """Verifica se a mensagem do erro chega ao comando"""

        with self.assertRaisesMessage(CommandError, "line 3: bad literal"):
            StatsCommand().run_engine(raising(ParseError("bad literal", line=3)))

    def test_passthrough(self):
        """Verifica se o resultado da operação é devolvido"""

        self.assertEqual(StatsCommand().run_engine(sum, [1, 2]), 3)


class SettingsTests(SimpleTestCase):
    def test_defaults(self):
        """Verifica os valores padrão"""

        with override_settings(KNOWLEDGE_COMPILER={}):
            self.assertEqual(engine_setting("VERIFY_MAX_VARS"), DEFAULTS["VERIFY_MAX_VARS"])

    @override_settings(KNOWLEDGE_COMPILER={"MAX_GATES": 7})
    def test_override(self):
        """Verifica a sobrescrita por settings"""

        self.assertEqual(engine_setting("MAX_GATES"), 7)
        self.assertFalse(engine_setting("EXACT_TREEWIDTH"))


class VerdictTests(SimpleTestCase):
    def test_truthiness(self):
        """Verifica o valor lógico e o motivo"""

        self.assertTrue(Verdict.passed())
        failed = Verdict.failed("gate 3 is not homed")
        self.assertFalse(failed)
        self.assertEqual(failed.reason, "gate 3 is not homed")
