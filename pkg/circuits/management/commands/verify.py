from collections import Counter

import numpy
from django.core.management.base import BaseCommand, CommandError

from circuits.checks import check_determinism_bruteforce, check_structuredness
from circuits.evaluation import truth_table
from circuits.formats import load_circuit
from circuits.models import GateKind
from circuits.serializers import StatsSerializer, circuit_stats
from formulas.parsers import parse_dimacs
from oracles.bruteforce import cnf_truth_table
from utils.conf import engine_setting
from utils.mixins import EngineCommandMixin, StatsByFormatMixin


class Command(StatsByFormatMixin, EngineCommandMixin, BaseCommand):
    help = "Check structuredness, width and, for small inputs, determinism and equivalence."
    stats_serializer_class = StatsSerializer

    def add_arguments(self, parser):
        parser.add_argument("circuit", help="path to a .sdnnf file")
        parser.add_argument("dimacs", nargs="?", help="CNF the circuit should be equivalent to")
        parser.add_argument("--vtree", help="vtree file, defaults to the .vtree next to the circuit")
        parser.add_argument("--output", default="main", help="output compared with the CNF")
        parser.add_argument("--stats-json", action="store_true")

    def fail(self, reason: str):
        raise CommandError(f"verification failed: {reason}", returncode=1)

    def handle(self, *args, **options):
        circuit = self.run_engine(load_circuit, options["circuit"], options["vtree"])

        verdict = check_structuredness(circuit)
        if not verdict:
            self.fail(verdict.reason)
        self.stdout.write("structure ok")

        per_node = Counter(g.home for g in circuit.gates if g.kind is GateKind.OR)
        recounted = max(per_node.values(), default=0)
        if recounted != circuit.width:
            self.fail(f"width recount {recounted} differs from {circuit.width}")

        if len(circuit.variables) > engine_setting("VERIFY_MAX_VARS"):
            self.stdout.write("semantic checks skipped, too many variables")
        else:
            verdict = check_determinism_bruteforce(circuit)
            if not verdict:
                self.fail(verdict.reason)
            self.stdout.write("determinism ok")
            if options["dimacs"]:
                self.check_equivalence(circuit, options)

        self.emit_stats(circuit_stats(circuit), options)

    def check_equivalence(self, circuit, options):
        with open(options["dimacs"], "rb") as handle:
            formula = self.run_engine(parse_dimacs, handle.read())
        extra = set(circuit.variables) - set(formula.variables)
        if extra:
            self.fail(f"circuit variables {sorted(extra)} are not in the formula")

        expected = self.run_engine(cnf_truth_table, formula)
        actual = self.run_engine(truth_table, circuit, options["output"], formula.variables)
        if not numpy.array_equal(expected, actual):
            row = int(numpy.argmax(expected != actual))
            self.fail(f"output {options['output']!r} disagrees with the formula at row {row}")
        self.stdout.write("equivalence ok")
