from dataclasses import dataclass
from typing import Iterable

from circuits.models import Gate, GateKind, StructuredCircuit, Vtree


@dataclass(frozen=True)
class ScopeSplit:
    variables: frozenset[int]
    forgot: frozenset[int]
    kept: frozenset[int]


def scope_split(vtree: Vtree, forgotten: Iterable[int]) -> list[ScopeSplit]:
    forgotten = frozenset(forgotten)

    return [
        ScopeSplit(scope, scope & forgotten, scope - forgotten) for scope in vtree.scopes
    ]


@dataclass(frozen=True)
class Shape:
    """Subset of a node's layer, as a bitset over the layer's slots."""

    node: int
    bits: int

    def gate_ids(self, layer: "ShapeLayer") -> frozenset[int]:
        return frozenset(
            gate_id for bit, gate_id in enumerate(layer.slots) if self.bits >> bit & 1
        )


class ShapeLayer:
    """The gates a shape ranges over at one node, and how they combine from the children.

    Slots are the or-gates of an internal node or the inputs of a leaf.
    ``links`` holds one ``(or bit, left bit, right bit)`` triple per and-gate
    feeding an or-gate of the node.
    """

    def __init__(self, circuit: StructuredCircuit, node: int):
        self.node = node
        wanted = (
            (lambda gate: gate.is_input)
            if circuit.vtree.is_leaf(node)
            else (lambda gate: gate.kind is GateKind.OR)
        )
        self.slots = tuple(g for g in circuit.labeling[node] if wanted(circuit.gates[g]))
        self.position = {gate_id: bit for bit, gate_id in enumerate(self.slots)}
        self.links: list[tuple[int, int, int]] = []

    def link(self, layers: list["ShapeLayer"], gates: tuple[Gate, ...]) -> None:
        for bit, gate_id in enumerate(self.slots):
            for and_id in gates[gate_id].inputs:
                left, right = gates[and_id].inputs
                left_layer = layers[gates[left].home]
                right_layer = layers[gates[right].home]
                self.links.append(
                    (bit, left_layer.position[left], right_layer.position[right])
                )

    def __len__(self) -> int:
        return len(self.slots)

    def join(self, left: int, right: int) -> int:
        joined = 0
        for bit, left_bit, right_bit in self.links:
            if left >> left_bit & 1 and right >> right_bit & 1:
                joined |= 1 << bit

        return joined

    def shape_of(self, gate_ids: Iterable[int]) -> Shape:
        bits = 0
        for gate_id in gate_ids:
            bits |= 1 << self.position[gate_id]

        return Shape(self.node, bits)


def shape_layers(circuit: StructuredCircuit) -> list[ShapeLayer]:
    layers = [ShapeLayer(circuit, node) for node in range(len(circuit.vtree))]
    for node, layer in enumerate(layers):
        if not circuit.vtree.is_leaf(node):
            layer.link(layers, circuit.gates)

    return layers


def join_shapes(layers: list[ShapeLayer], node: int, left: Shape, right: Shape) -> Shape:
    """Shape at ``node`` of an assignment whose halves have shapes ``left`` and ``right``."""
    return Shape(node, layers[node].join(left.bits, right.bits))


def normalize_root(circuit: StructuredCircuit) -> StructuredCircuit:
    """Put a fan-in-one or-gate above every output that is an and-gate."""
    vtree = circuit.vtree
    if vtree.is_leaf(vtree.root):
        return circuit

    gates = list(circuit.gates)
    outputs = dict(circuit.outputs)
    for name, gate_id in circuit.outputs.items():
        if gates[gate_id].kind is GateKind.AND:
            gates.append(Gate(GateKind.OR, vtree.root, (gate_id,)))
            outputs[name] = len(gates) - 1

    if len(gates) == len(circuit.gates):
        return circuit

    return StructuredCircuit(vtree, tuple(gates), outputs, circuit.deterministic)
