from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from formulas.parsers import parse_qdimacs
from qbfs.serializers import QbfStatsSerializer, validated_budgets
from qbfs.solver import solve, solve_via_obdd
from utils.mixins import EngineCommandMixin, StatsByFormatMixin


class Command(StatsByFormatMixin, EngineCommandMixin, BaseCommand):
    help = "Decide a closed QDIMACS formula, or count the models of its free variables."
    stats_serializer_class = QbfStatsSerializer
    engines = {
        "dnnf": solve,
        "obdd": solve_via_obdd,
    }
    verdict_exit_codes = {True: 10, False: 20}

    def add_arguments(self, parser):
        parser.add_argument("input", help="QDIMACS file")
        parser.add_argument("--engine", choices=sorted(self.engines), default="dnnf")
        parser.add_argument("--stage-stats", action="store_true", help="print the width of every stage")
        parser.add_argument("--max-width", type=int)
        parser.add_argument("--max-gates", type=int)
        parser.add_argument("--stats-json", action="store_true")

    def handle(self, *args, **options):
        try:
            budgets = validated_budgets(options)
        except ValidationError as exc:
            raise CommandError(f"invalid budget: {exc.detail}") from exc

        qbf = self.run_engine(parse_qdimacs, Path(options["input"]).read_bytes())
        result = self.run_engine(self.engines[options["engine"]], qbf, **budgets)

        if options["stage_stats"] or options["stats_json"]:
            stats = {
                **result.stats.as_dict(),
                "truth": result.truth,
                "model_count": result.model_count,
            }
            if result.stats.stage_widths:
                stats["width"] = result.stats.stage_widths[-1]
            self.emit_stats(stats, options)

        if result.truth is None:
            self.stdout.write(str(result.model_count))
            return

        self.stdout.write("TRUE" if result.truth else "FALSE")
        raise SystemExit(self.verdict_exit_codes[result.truth])
