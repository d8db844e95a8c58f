import time
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from circuits.formats import save_circuit
from circuits.serializers import StatsSerializer, circuit_stats
from compilation.compiler import compile_formula, decompose
from decompositions.formats import format_td
from formulas.parsers import parse_dimacs
from qbfs.serializers import validated_budgets
from utils.mixins import EngineCommandMixin, StatsByFormatMixin


class Command(StatsByFormatMixin, EngineCommandMixin, BaseCommand):
    help = "Compile a DIMACS CNF into <out>.vtree and <out>.sdnnf."
    stats_serializer_class = StatsSerializer

    def add_arguments(self, parser):
        parser.add_argument("input", help="DIMACS CNF file")
        parser.add_argument("--out", help="output stem, defaults to the input path without suffix")
        parser.add_argument("--td-out", help="also write the tree decomposition in PACE format")
        parser.add_argument("--exact", action="store_true", help="exact treewidth on small graphs")
        parser.add_argument("--max-width", type=int)
        parser.add_argument("--max-gates", type=int)
        parser.add_argument("--stats-json", action="store_true")

    def handle(self, *args, **options):
        try:
            budgets = validated_budgets(options)
        except ValidationError as exc:
            raise CommandError(f"invalid budget: {exc.detail}") from exc

        started = time.perf_counter()
        source = Path(options["input"])
        formula = self.run_engine(parse_dimacs, source.read_bytes())
        decomposition = self.run_engine(decompose, formula, exact=options["exact"] or None)
        circuit = self.run_engine(
            compile_formula,
            formula,
            decomposition,
            max_gates=budgets.get("max_gates"),
            max_width=budgets.get("max_width"),
        )

        save_circuit(circuit, options["out"] or source.with_suffix(""))
        if options["td_out"]:
            Path(options["td_out"]).write_text(format_td(decomposition, formula.num_vars))

        stats = circuit_stats(
            circuit,
            maxbag=decomposition.max_bag,
            stage_widths=[circuit.width],
            wall_ms=round((time.perf_counter() - started) * 1000, 3),
        )
        self.emit_stats(stats, options)
