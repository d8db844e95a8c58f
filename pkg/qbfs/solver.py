import logging
import time
from dataclasses import dataclass, field

from circuits.evaluation import count_models, evaluate
from circuits.models import StructuredCircuit
from compilation.compiler import compile_formula, decompose
from decompositions.nice import forget_order
from formulas.models import QbfFormula, Quantifier
from obdds.builders import obdd_count_models, obdd_from_cnf_bruteforce, obdd_negate
from obdds.conversion import obdd_to_circuit
from obdds.projection import obdd_project_dual
from projection.projector import forall_project, project
from utils.conf import engine_setting
from utils.exceptions import BoundViolation, BudgetExceeded, OracleLimitExceeded

from .towers import exp_tower

logger = logging.getLogger(__name__)

# towers above 2**64 are reported as unknown
REPORTED_BOUND_BITS = 64


@dataclass
class SolveStats:
    engine: str
    maxbag: int | None = None
    stage_names: list[str] = field(default_factory=list)
    stage_widths: list[int] = field(default_factory=list)
    stage_gates: list[int] = field(default_factory=list)
    width_bounds: list[int | None] = field(default_factory=list)
    wall_ms: float = 0.0

    def as_dict(self) -> dict:
        return {
            "engine": self.engine,
            "maxbag": self.maxbag,
            "stage_names": self.stage_names,
            "stage_widths": self.stage_widths,
            "stage_gates": self.stage_gates,
            "width_bounds": self.width_bounds,
            "wall_ms": self.wall_ms,
        }


@dataclass
class SolveResult:
    circuit: StructuredCircuit
    truth: bool | None
    model_count: int | None
    stats: SolveStats


class _Stages:
    """Records every stage and enforces the budgets and the width tower.

    Stage k after the first also gets the a priori bound exp_tower(k, w0),
    with w0 the width of the first stage.
    """

    def __init__(self, stats: SolveStats, max_width: int, max_gates: int):
        self.stats = stats
        self.max_width = max_width
        self.max_gates = max_gates
        self.base = 1

    def tower_bound(self) -> int | None:
        levels = len(self.stats.stage_widths) - 1
        try:
            return exp_tower(levels, self.base, max_bits=REPORTED_BOUND_BITS)
        except BudgetExceeded:
            return None

    def record(self, name: str, width: int, size: int, tower: bool = True) -> None:
        if tower and self.stats.stage_widths:
            previous = self.stats.stage_widths[-1]
            if width > 2 ** max(previous, 1):
                raise BoundViolation(f"stage {name}: width {width} exceeds 2^{max(previous, 1)}")

        if not tower:
            self.base = max(width, 1)
        self.stats.stage_names.append(name)
        self.stats.stage_widths.append(width)
        self.stats.stage_gates.append(size)
        self.stats.width_bounds.append(self.tower_bound() if tower else None)
        logger.info("%s stage %s: width %d, size %d", self.stats.engine, name, width, size)

        if width > self.max_width:
            raise BudgetExceeded(name, f"width {width} exceeds the ceiling {self.max_width}")
        if size > self.max_gates:
            raise BudgetExceeded(name, f"{size} gates exceed the ceiling {self.max_gates}")


def _stage_name(index: int, quantifier: Quantifier) -> str:
    return f"{'exists' if quantifier is Quantifier.EXISTS else 'forall'}{index + 1}"


def solve(
    qbf: QbfFormula, max_width: int | None = None, max_gates: int | None = None
) -> SolveResult:
    """Compile the matrix, then quantify the blocks away from the innermost one.

    The circuit always carries ``exists`` (the formula so far) and
    ``not_exists`` (its negation), so both quantifiers cost one projection.
    """
    started = time.perf_counter()
    max_width = max_width or engine_setting("MAX_WIDTH")
    max_gates = max_gates or engine_setting("MAX_GATES")
    stats = SolveStats("dnnf")
    stages = _Stages(stats, max_width, max_gates)

    decomposition = decompose(qbf.matrix)
    stats.maxbag = decomposition.max_bag
    circuit = compile_formula(qbf.matrix, decomposition, max_gates=max_gates)
    stages.record("compile", circuit.width, len(circuit), tower=False)

    circuit = project(circuit, (), max_gates=max_gates, stage="dual")
    stages.record("dual", circuit.width, len(circuit))

    for index in reversed(range(len(qbf.prefix))):
        block = qbf.prefix[index]
        name = _stage_name(index, block.quantifier)
        if block.quantifier is Quantifier.EXISTS:
            circuit = project(
                circuit, block.variables, output="exists", max_gates=max_gates, stage=name
            )
        else:
            circuit = forall_project(circuit, block.variables, max_gates=max_gates, stage=name)
        stages.record(name, circuit.width, len(circuit))

    truth = model_count = None
    if qbf.free_variables:
        model_count = count_models(circuit, "exists")
    else:
        truth = evaluate(circuit, "exists", {})
    stats.wall_ms = (time.perf_counter() - started) * 1000

    return SolveResult(circuit, truth, model_count, stats)


def solve_via_obdd(
    qbf: QbfFormula, max_width: int | None = None, max_gates: int | None = None
) -> SolveResult:
    """Same answers as ``solve`` with complete OBDDs along a forget order of the matrix."""
    started = time.perf_counter()
    max_width = max_width or engine_setting("MAX_WIDTH")
    max_gates = max_gates or engine_setting("MAX_GATES")
    stats = SolveStats("obdd")
    stages = _Stages(stats, max_width, max_gates)

    decomposition = decompose(qbf.matrix)
    stats.maxbag = decomposition.max_bag
    try:
        positive = obdd_from_cnf_bruteforce(qbf.matrix, forget_order(decomposition))
    except OracleLimitExceeded as exc:
        raise BudgetExceeded("build", exc.detail) from exc
    negative = obdd_negate(positive)
    stages.record("build", positive.width, len(positive), tower=False)

    for index in reversed(range(len(qbf.prefix))):
        block = qbf.prefix[index]
        if block.quantifier is Quantifier.EXISTS:
            projected = obdd_project_dual(positive, block.variables)
            positive, negative = projected.exists, projected.not_exists
        else:
            projected = obdd_project_dual(negative, block.variables)
            positive, negative = projected.not_exists, projected.exists
        stages.record(_stage_name(index, block.quantifier), positive.width, len(positive))

    truth = model_count = None
    if qbf.free_variables:
        model_count = obdd_count_models(positive)
    else:
        truth = positive.evaluate({})
    stats.wall_ms = (time.perf_counter() - started) * 1000

    return SolveResult(obdd_to_circuit(positive), truth, model_count, stats)
