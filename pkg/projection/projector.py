import logging
from typing import Iterable

from circuits.models import CircuitBuilder, GateKind, StructuredCircuit
from circuits.rewriting import dedup_and_gates, remove_constant_leaves
from utils.exceptions import BoundViolation, BudgetExceeded, MissingOutput, UnknownVariable

from .shapes import normalize_root, shape_layers

logger = logging.getLogger(__name__)


def pick_output(circuit: StructuredCircuit, output: str | None) -> str:
    if output is not None:
        circuit.output(output)
        return output
    if "main" in circuit.outputs:
        return "main"
    if len(circuit.outputs) == 1:
        return next(iter(circuit.outputs))

    raise MissingOutput(f"choose one of the outputs {sorted(circuit.outputs)}")


class ShapeProjector:
    """Bottom-up shape enumeration for one output.

    ``shapes[t]`` maps every shape realized at node ``t`` to the gates whose
    disjunction accepts exactly the kept assignments of that shape: literals
    at kept leaves, a constant at forgotten leaves, one or-gate elsewhere.
    """

    def __init__(
        self,
        circuit: StructuredCircuit,
        forgotten: frozenset[int],
        max_gates: int | None = None,
        stage: str = "project",
    ):
        self.source = circuit
        self.forgotten = forgotten
        self.max_gates = max_gates
        self.stage = stage
        self.layers = shape_layers(circuit)
        self.builder = CircuitBuilder(circuit.vtree.unlabel(forgotten))
        self.shapes: list[dict[int, tuple[int, ...]]] = []
        self.pair_bound = 4 ** max(circuit.width, 1)
        self.max_pairs = 0

    def run(self) -> "ShapeProjector":
        vtree = self.source.vtree
        for node in range(len(vtree)):
            if vtree.is_leaf(node):
                self.shapes.append(self.leaf_shapes(node))
            else:
                self.shapes.append(self.internal_shapes(node))

        return self

    def leaf_shapes(self, node: int) -> dict[int, tuple[int, ...]]:
        gates = self.source.gates
        layer = self.layers[node]
        variable = self.source.vtree.labels[node]

        def bits(value: bool | None) -> int:
            found = 0
            for bit, gate_id in enumerate(layer.slots):
                gate = gates[gate_id]
                if gate.kind is GateKind.LITERAL:
                    hit = value is None or (gate.literal > 0) == value
                else:
                    hit = gate.kind is GateKind.TRUE
                if hit:
                    found |= 1 << bit
            return found

        if variable is None or variable in self.forgotten:
            return {bits(None): (self.builder.constant(True, node),)}

        positive, negative = bits(True), bits(False)
        if positive == negative:
            return {
                positive: (self.builder.literal(variable, node), self.builder.literal(-variable, node))
            }

        return {
            positive: (self.builder.literal(variable, node),),
            negative: (self.builder.literal(-variable, node),),
        }

    def internal_shapes(self, node: int) -> dict[int, tuple[int, ...]]:
        left_node, right_node = self.source.vtree.children[node]
        left, right = self.shapes[left_node], self.shapes[right_node]
        layer = self.layers[node]

        pairs = len(left) * len(right)
        if pairs > self.pair_bound:
            raise BoundViolation(f"node {node} would join {pairs} shape pairs, bound {self.pair_bound}")
        self.max_pairs = max(self.max_pairs, pairs)

        buckets: dict[int, list[int]] = {}
        for left_bits, left_pieces in left.items():
            for right_bits, right_pieces in right.items():
                bucket = buckets.setdefault(layer.join(left_bits, right_bits), [])
                bucket.extend(
                    self.builder.conjunction(a, b, node)
                    for a in left_pieces
                    for b in right_pieces
                )
                self.check_gates()

        return {
            bits: (self.builder.disjunction(ands, node),) for bits, ands in buckets.items()
        }

    def check_gates(self) -> None:
        if self.max_gates is not None and len(self.builder) > self.max_gates:
            raise BudgetExceeded(
                self.stage, f"{len(self.builder)} gates exceed the ceiling {self.max_gates}"
            )

    def root_gate(self, pieces: tuple[int, ...]) -> int:
        builder = self.builder
        root = builder.vtree.root
        if not builder.vtree.is_leaf(root):
            return pieces[0] if pieces else builder.disjunction((), root)
        if not pieces:
            return builder.constant(False, root)
        if len(pieces) == 2:
            return builder.constant(True, root)

        return pieces[0]

    def result(self, output_gate: int) -> StructuredCircuit:
        root = self.source.vtree.root
        accept = self.layers[root].shape_of((output_gate,)).bits
        shapes = self.shapes[root]

        self.builder.outputs["exists"] = self.root_gate(shapes.get(accept, ()))
        self.builder.outputs["not_exists"] = self.root_gate(shapes.get(0, ()))

        return self.builder.build(deterministic=True)


def project(
    circuit: StructuredCircuit,
    forgotten: Iterable[int],
    output: str | None = None,
    max_gates: int | None = None,
    max_width: int | None = None,
    stage: str = "project",
) -> StructuredCircuit:
    """Outputs ``exists`` and ``not_exists`` for the chosen output with ``forgotten`` quantified away.

    The result is deterministic even for a non-deterministic input and its
    width is at most 2 ** width of the input. ``max_gates`` is enforced while
    the shapes are built, ``max_width`` on the result; both raise
    ``BudgetExceeded`` naming ``stage``.
    """
    forgotten = frozenset(forgotten)
    unknown = sorted(forgotten - set(circuit.variables))
    if unknown:
        raise UnknownVariable(f"cannot project unknown variables {unknown}")

    name = pick_output(circuit, output)
    source = normalize_root(circuit.select(name))
    projector = ShapeProjector(source, forgotten, max_gates, stage).run()
    result = dedup_and_gates(remove_constant_leaves(projector.result(source.output(name))))

    width = circuit.width
    bound = 2 ** max(width, 1)
    if result.width > bound:
        raise BoundViolation(f"projected width {result.width} exceeds 2^{max(width, 1)}")
    if max_width is not None and result.width > max_width:
        raise BudgetExceeded(stage, f"width {result.width} exceeds the ceiling {max_width}")

    logger.info(
        "projected %d variables: width %d -> %d, %d gates, at most %d shape pairs per node",
        len(forgotten),
        width,
        result.width,
        len(result),
        projector.max_pairs,
    )

    return result


def negate(
    circuit: StructuredCircuit, output: str | None = None, **budgets
) -> StructuredCircuit:
    projected = project(circuit, (), output, **budgets)

    return projected.select("not_exists").rename({"not_exists": "main"})


def forall_project(
    circuit: StructuredCircuit,
    forgotten: Iterable[int],
    negative: str = "not_exists",
    **budgets,
) -> StructuredCircuit:
    """Dual outputs of the universal projection, from the circuit's negated output.

    ``exists`` of the result is the universally quantified function and
    ``not_exists`` its complement, so results chain like those of ``project``.
    """
    circuit.output(negative)
    projected = project(circuit, forgotten, output=negative, **budgets)

    return projected.rename({"exists": "not_exists", "not_exists": "exists"})
