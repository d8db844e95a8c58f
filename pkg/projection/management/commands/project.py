import time

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from circuits.formats import load_circuit, save_circuit
from circuits.serializers import StatsSerializer, circuit_stats
from projection.projector import forall_project, negate, project
from qbfs.serializers import validated_budgets
from utils.mixins import EngineCommandMixin, StatsByFormatMixin

DUAL_NAMES = {"exists": "main", "not_exists": "negation"}


class Command(StatsByFormatMixin, EngineCommandMixin, BaseCommand):
    help = "Quantify variables out of a circuit file, or negate it."
    stats_serializer_class = StatsSerializer

    def add_arguments(self, parser):
        parser.add_argument("circuit", help="path to a .sdnnf file")
        parser.add_argument("--vars", default="", help="variables to quantify, e.g. '1 4 5'")
        parser.add_argument("--mode", choices=("exists", "forall", "negate"), default="exists")
        parser.add_argument("--out", required=True, help="output stem")
        parser.add_argument("--vtree", help="vtree file, defaults to the .vtree next to the circuit")
        parser.add_argument("--output", help="output gate to work on")
        parser.add_argument("--max-width", type=int)
        parser.add_argument("--max-gates", type=int)
        parser.add_argument("--stats-json", action="store_true")

    def parse_vars(self, text: str) -> list[int]:
        try:
            return [int(token) for token in text.replace(",", " ").split()]
        except ValueError:
            raise CommandError(f"--vars expects variable ids, got {text!r}", returncode=2) from None

    def handle(self, *args, **options):
        try:
            budgets = validated_budgets(options)
        except ValidationError as exc:
            raise CommandError(f"invalid budget: {exc.detail}") from exc

        started = time.perf_counter()
        circuit = self.run_engine(load_circuit, options["circuit"], options["vtree"])
        variables = self.parse_vars(options["vars"])
        mode = options["mode"]

        if mode == "negate":
            if variables:
                raise CommandError("--mode negate takes no --vars")
            result = self.run_engine(negate, circuit, options["output"], **budgets)
        elif mode == "exists":
            result = self.run_engine(project, circuit, variables, options["output"], **budgets)
            result = result.rename(DUAL_NAMES)
        else:
            dual = self.run_engine(project, circuit, (), options["output"], **budgets)
            result = self.run_engine(forall_project, dual, variables, **budgets)
            result = result.rename(DUAL_NAMES)

        save_circuit(result, options["out"])
        stats = circuit_stats(
            result,
            stage_widths=[circuit.width, result.width],
            wall_ms=round((time.perf_counter() - started) * 1000, 3),
        )
        self.emit_stats(stats, options)
