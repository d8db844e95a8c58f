import logging

from circuits.models import CircuitBuilder, GateKind, StructuredCircuit, Vtree
from projection.projector import pick_output, project
from projection.shapes import normalize_root
from utils.exceptions import BoundViolation

from .alignment import share_vtree

logger = logging.getLogger(__name__)


def _input_values(gate) -> tuple[bool, bool]:
    """Values of an input gate for the leaf variable set to 0 and to 1."""
    if gate.kind is GateKind.LITERAL:
        return (gate.literal < 0, gate.literal > 0)
    value = gate.kind is GateKind.TRUE

    return (value, value)


def leaf_gate(builder: CircuitBuilder, node: int, values: tuple[bool, bool]) -> int | None:
    """Input gate at leaf ``node`` for the function given by its two values; None when false."""
    variable = builder.vtree.labels[node]
    if variable is None:
        return builder.constant(True, node) if values[0] else None
    if values == (False, False):
        return None
    if values == (True, True):
        return builder.constant(True, node)

    return builder.literal(variable if values[1] else -variable, node)


class _Product:
    """Memoized pairing of gates of two circuits over one vtree.

    ``pair(u, v)`` is a gate of the new circuit computing ``u`` and ``v``
    together, or ``None`` when the conjunction is unsatisfiable.
    """

    def __init__(self, first: StructuredCircuit, second: StructuredCircuit):
        self.first = first
        self.second = second
        self.builder = CircuitBuilder(first.vtree)
        self.memo: dict[tuple[int, int], int | None] = {}

    def needs(self, u: int, v: int) -> list[tuple[int, int]]:
        left, right = self.first.gates[u], self.second.gates[v]
        if left.kind is GateKind.AND:
            return list(zip(left.inputs, right.inputs))
        if left.kind is GateKind.OR:
            return [(a, b) for a in left.inputs for b in right.inputs]

        return []

    def combine(self, u: int, v: int) -> int | None:
        left, right = self.first.gates[u], self.second.gates[v]
        home = left.home
        if left.is_input:
            first, second = _input_values(left), _input_values(right)
            return leaf_gate(self.builder, home, (first[0] and second[0], first[1] and second[1]))

        parts = [self.memo[pair] for pair in self.needs(u, v)]
        if left.kind is GateKind.AND:
            if None in parts:
                return None
            return self.builder.conjunction(parts[0], parts[1], home)

        parts = [part for part in parts if part is not None]

        return self.builder.disjunction(parts, home) if parts else None

    def pair(self, u: int, v: int) -> int | None:
        stack = [(u, v)]
        while stack:
            top = stack[-1]
            if top in self.memo:
                stack.pop()
                continue
            missing = [pair for pair in self.needs(*top) if pair not in self.memo]
            if missing:
                stack.extend(missing)
                continue
            stack.pop()
            self.memo[top] = self.combine(*top)

        return self.memo[(u, v)]

    def root_gate(self, gate_id: int | None) -> int:
        if gate_id is not None:
            return gate_id
        vtree: Vtree = self.builder.vtree
        if vtree.is_leaf(vtree.root):
            return self.builder.constant(False, vtree.root)

        return self.builder.disjunction((), vtree.root)


def conjoin(
    first: StructuredCircuit,
    second: StructuredCircuit,
    first_output: str | None = None,
    second_output: str | None = None,
) -> StructuredCircuit:
    """Product of two circuits over the same vtree, with width at most the product of widths."""
    second = share_vtree(first, second)
    left = normalize_root(first.select(pick_output(first, first_output)))
    right = normalize_root(second.select(pick_output(second, second_output)))

    product = _Product(left, right)
    top = product.pair(next(iter(left.outputs.values())), next(iter(right.outputs.values())))
    product.builder.outputs["main"] = product.root_gate(top)
    result = product.builder.build(first.deterministic and second.deterministic)

    bound = max(first.width, 1) * max(second.width, 1)
    if result.width > bound:
        raise BoundViolation(f"conjunction width {result.width} exceeds {bound}")
    logger.info(
        "conjoined widths %d and %d: width %d, %d gates",
        first.width,
        second.width,
        result.width,
        len(result),
    )

    return result


def disjoin(
    first: StructuredCircuit,
    second: StructuredCircuit,
    first_output: str | None = None,
    second_output: str | None = None,
) -> StructuredCircuit:
    """Deterministic disjunction through the shape partitions of both circuits.

    Each input is projected over no variable, which splits its assignments
    between an accepting and a rejecting root gate. The result is the or of
    the product pairs with at least one accepting side.
    """
    second = share_vtree(first, second)
    left = project(first, (), first_output)
    right = project(second, (), second_output)
    right = share_vtree(left, right)

    product = _Product(left, right)
    vtree = left.vtree
    accepted = [
        product.pair(left.outputs[a], right.outputs[b])
        for a, b in (("exists", "exists"), ("exists", "not_exists"), ("not_exists", "exists"))
    ]
    accepted = [gate_id for gate_id in accepted if gate_id is not None]

    builder = product.builder
    if vtree.is_leaf(vtree.root):
        values = [False, False]
        for gate_id in accepted:
            gate = builder.gates[gate_id]
            for value, hit in enumerate(_input_values(gate)):
                values[value] = values[value] or hit
        top = leaf_gate(builder, vtree.root, (values[0], values[1]))
    else:
        ands = [kid for gate_id in accepted for kid in builder.gates[gate_id].inputs]
        top = builder.disjunction(ands, vtree.root) if ands else None
    builder.outputs["main"] = product.root_gate(top)
    result = builder.build(deterministic=True)

    exponent = max(first.width, 1) + max(second.width, 1)
    below_root = max(
        (len(result.or_gates_at(node)) for node in range(len(vtree)) if node != vtree.root),
        default=0,
    )
    if result.width > 2**exponent + 1:
        raise BoundViolation(f"disjunction width {result.width} exceeds 2^{exponent} + 1")
    logger.debug(
        "disjunction width %d counting the output gate, %d without it, bound 2^%d",
        result.width,
        max(below_root, len(result.or_gates_at(vtree.root)) - 1),
        exponent,
    )

    return result
