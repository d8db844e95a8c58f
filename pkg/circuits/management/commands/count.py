from django.core.management.base import BaseCommand

from circuits.checks import audited_deterministic
from circuits.evaluation import count_models
from circuits.formats import load_circuit
from utils.mixins import EngineCommandMixin


class Command(EngineCommandMixin, BaseCommand):
    help = "Print the model count of a deterministic circuit file."

    def add_arguments(self, parser):
        parser.add_argument("circuit", help="path to a .sdnnf file")
        parser.add_argument("--vtree", help="vtree file, defaults to the .vtree next to the circuit")
        parser.add_argument("--output", default="main", help="output gate to count")
        parser.add_argument(
            "--assume-deterministic",
            action="store_true",
            help="skip the determinism audit, for files written by compile or project",
        )

    def handle(self, *args, **options):
        circuit = self.run_engine(
            load_circuit, options["circuit"], options["vtree"], options["assume_deterministic"]
        )
        circuit = self.run_engine(audited_deterministic, circuit)
        models = self.run_engine(count_models, circuit, options["output"])

        self.stdout.write(str(models))
