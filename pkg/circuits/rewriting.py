import logging
from typing import Mapping

import numpy

from utils.exceptions import BoundViolation, UnknownVariable

from .models import (
    CircuitBuilder,
    Gate,
    GateKind,
    StructuredCircuit,
    Vtree,
    VtreeBuilder,
    collect_garbage,
)

logger = logging.getLogger(__name__)


def _contract(vtree: Vtree) -> tuple[Vtree | None, list[int | None]]:
    """Drop unlabeled leaves, merging each parent into its surviving child.

    Returns the contracted tree (``None`` when nothing labeled is left) and
    the image of every old node.
    """
    builder = VtreeBuilder()
    image: list[int | None] = []
    for node, kids in enumerate(vtree.children):
        if kids is None:
            label = vtree.labels[node]
            image.append(None if label is None else builder.leaf(label))
            continue
        left, right = image[kids[0]], image[kids[1]]
        if left is None or right is None:
            image.append(right if left is None else left)
        else:
            image.append(builder.internal(left, right))

    if image[vtree.root] is None:
        return None, image

    return builder.build(), image


def _trivial(outputs: Mapping[str, bool], deterministic: bool) -> StructuredCircuit:
    builder = CircuitBuilder(VtreeBuilder.right_comb([]))
    for name, value in outputs.items():
        builder.outputs[name] = builder.constant(value, 0)

    return builder.build(deterministic)


def remove_constant_leaves(circuit: StructuredCircuit) -> StructuredCircuit:
    """Equivalent circuit over the vtree without unlabeled leaves.

    Gates over a constant-only subtree fold into booleans. Every other gate
    becomes a disjunction of pieces homed at its node's image: literal gates
    at leaves, and-gates at internal nodes. Or-gates are only rebuilt where
    a parent and-gate (or an output) needs them as one gate.
    """
    vtree = circuit.vtree
    if not vtree.extended:
        return circuit

    contracted, image = _contract(vtree)
    gates = circuit.gates

    # constants fold bottom-up even when the whole tree vanishes
    reps: list[bool | tuple[int, ...]] = []
    if contracted is None:
        for gate in gates:
            if gate.is_constant:
                reps.append(gate.kind is GateKind.TRUE)
            elif gate.kind is GateKind.AND:
                reps.append(all(reps[kid] for kid in gate.inputs))
            else:
                reps.append(any(reps[kid] for kid in gate.inputs))
        outputs = {name: reps[gate_id] for name, gate_id in circuit.outputs.items()}
        logger.debug("constant removal left no labeled leaf")

        return _trivial(outputs, circuit.deterministic)

    builder = CircuitBuilder(contracted)
    joined: dict[int, int | None] = {}

    def single(gate_id: int) -> list[int]:
        pieces = reps[gate_id]
        home = image[gates[gate_id].home]
        if contracted.is_leaf(home):
            return list(pieces)
        if gate_id not in joined:
            joined[gate_id] = builder.disjunction(pieces, home) if pieces else None
        found = joined[gate_id]

        return [] if found is None else [found]

    for gate_id, gate in enumerate(gates):
        home = image[gate.home]
        if home is None:
            if gate.is_constant:
                reps.append(gate.kind is GateKind.TRUE)
            elif gate.kind is GateKind.AND:
                reps.append(all(reps[kid] for kid in gate.inputs))
            else:
                reps.append(any(reps[kid] for kid in gate.inputs))
        elif gate.kind is GateKind.LITERAL:
            reps.append((builder.literal(gate.literal, home),))
        elif gate.is_constant:
            # constant on a labeled root leaf
            variable = contracted.labels[home]
            value = gate.kind is GateKind.TRUE
            reps.append(
                (builder.literal(variable, home), builder.literal(-variable, home))
                if value
                else ()
            )
        elif gate.kind is GateKind.OR:
            pieces: dict[int, None] = {}
            for kid in gate.inputs:
                pieces.update(dict.fromkeys(reps[kid]))
            reps.append(tuple(pieces))
        else:
            left, right = (reps[kid] for kid in gate.inputs)
            if left is False or right is False:
                reps.append(())
            elif left is True:
                reps.append(right)
            elif right is True:
                reps.append(left)
            else:
                reps.append(
                    tuple(
                        builder.conjunction(a, b, home)
                        for a in single(gate.inputs[0])
                        for b in single(gate.inputs[1])
                    )
                )

    root = contracted.root
    for name, gate_id in circuit.outputs.items():
        pieces = reps[gate_id]
        if contracted.is_leaf(root):
            variable = contracted.labels[root]
            if not pieces:
                builder.outputs[name] = builder.constant(False, root)
            elif len(pieces) == 2:
                builder.outputs[name] = builder.constant(True, root)
            else:
                builder.outputs[name] = pieces[0]
        elif gates[gate_id].kind is GateKind.AND and len(pieces) == 1:
            builder.outputs[name] = pieces[0]
        elif gates[gate_id].kind is GateKind.OR and pieces:
            builder.outputs[name] = single(gate_id)[0]
        else:
            builder.outputs[name] = builder.disjunction(pieces, root)

    result = builder.build(circuit.deterministic)
    logger.debug(
        "constant removal: %d -> %d vtree nodes, %d -> %d gates",
        len(vtree),
        len(contracted),
        len(circuit),
        len(result),
    )

    return result


def condition(circuit: StructuredCircuit, assignment: Mapping[int, bool]) -> StructuredCircuit:
    """Fix the variables of ``assignment``; the result ranges over the others."""
    unknown = sorted(set(assignment) - set(circuit.variables))
    if unknown:
        raise UnknownVariable(f"cannot condition on unknown variables {unknown}")
    if not assignment:
        return circuit

    gates = []
    for gate in circuit.gates:
        if gate.kind is GateKind.LITERAL and gate.variable in assignment:
            value = bool(assignment[gate.variable]) == (gate.literal > 0)
            gate = Gate(GateKind.TRUE if value else GateKind.FALSE, gate.home)
        gates.append(gate)

    unlabeled = StructuredCircuit(
        circuit.vtree.unlabel(assignment),
        tuple(gates),
        dict(circuit.outputs),
        circuit.deterministic,
    )

    return remove_constant_leaves(unlabeled)


def _slot_positions(circuit: StructuredCircuit, canon: list[int]) -> tuple[list[int], list[int]]:
    """Index every or-gate and canonical input within its node; returns positions and counts."""
    positions = [-1] * len(circuit.gates)
    counts = [0] * len(circuit.vtree)
    for gate_id, gate in enumerate(circuit.gates):
        if gate.kind is GateKind.AND or canon[gate_id] != gate_id:
            continue
        positions[gate_id] = counts[gate.home]
        counts[gate.home] += 1

    return positions, counts


def dedup_and_gates(circuit: StructuredCircuit) -> StructuredCircuit:
    """Merge and-gates of a node that read the same pair of inputs.

    A per-node scratch table indexed by the positions of the two inputs
    among their nodes' input and or-gates finds duplicates in constant time.
    Afterwards every node holds at most w'^2 + w' gates, w' = max(width, 2).
    """
    gates = circuit.gates
    vtree = circuit.vtree
    canon = list(range(len(gates)))

    seen_inputs: dict[tuple, int] = {}
    for gate_id, gate in enumerate(gates):
        if gate.is_input:
            key = (gate.kind, gate.literal, gate.home)
            canon[gate_id] = seen_inputs.setdefault(key, gate_id)

    positions, counts = _slot_positions(circuit, canon)
    tables: dict[int, numpy.ndarray] = {}
    for gate_id, gate in enumerate(gates):
        if gate.kind is not GateKind.AND:
            continue
        left, right = (canon[kid] for kid in gate.inputs)
        if gate.home not in tables:
            sides = vtree.children[gate.home]
            tables[gate.home] = numpy.full(
                (counts[sides[0]], counts[sides[1]]), -1, dtype=numpy.int64
            )
        table = tables[gate.home]
        cell = (positions[left], positions[right])
        if table[cell] < 0:
            table[cell] = gate_id
        else:
            canon[gate_id] = int(table[cell])

    result = collect_garbage(vtree, gates, circuit.outputs, circuit.deterministic, canon)

    bound = max(result.width, 2)
    for node, homed in enumerate(result.labeling):
        if len(homed) > bound * bound + bound:
            raise BoundViolation(
                f"node {node} keeps {len(homed)} gates after dedup, bound {bound * bound + bound}"
            )
    logger.debug("dedup: %d -> %d gates", len(circuit), len(result))

    return result
