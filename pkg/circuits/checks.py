from dataclasses import replace

import numpy

from utils.conf import engine_setting
from utils.exceptions import DeterminismRequired, OracleLimitExceeded
from utils.verdicts import Verdict

from .evaluation import gate_tables
from .models import GateKind, StructuredCircuit


def _check_inputs(circuit: StructuredCircuit, gate_id: int) -> str | None:
    vtree = circuit.vtree
    gate = circuit.gates[gate_id]
    label = vtree.labels[gate.home]

    if not vtree.is_leaf(gate.home):
        return f"input gate {gate_id} is homed at internal node {gate.home}"
    if gate.kind is GateKind.LITERAL:
        if label != gate.variable:
            return f"literal gate {gate_id} on {gate.literal} is homed at leaf labeled {label}"
    elif label is not None and gate.home != vtree.root:
        return f"constant gate {gate_id} is homed at labeled leaf {gate.home}"

    return None


def _check_and(circuit: StructuredCircuit, gate_id: int) -> str | None:
    vtree = circuit.vtree
    gate = circuit.gates[gate_id]

    if vtree.is_leaf(gate.home):
        return f"and gate {gate_id} is homed at leaf {gate.home}"
    if len(gate.inputs) != 2:
        return f"and gate {gate_id} has {len(gate.inputs)} inputs"
    for kid, side in zip(gate.inputs, vtree.children[gate.home]):
        child = circuit.gates[kid]
        if child.kind is GateKind.AND:
            return f"and gate {gate_id} is fed by and gate {kid}"
        if child.home != side:
            return (
                f"input {kid} of and gate {gate_id} is homed at {child.home}, "
                f"expected child {side} of node {gate.home}"
            )

    return None


def _check_or(circuit: StructuredCircuit, gate_id: int) -> str | None:
    gate = circuit.gates[gate_id]

    if circuit.vtree.is_leaf(gate.home):
        return f"or gate {gate_id} is homed at leaf {gate.home}"
    for kid in gate.inputs:
        child = circuit.gates[kid]
        if child.kind is not GateKind.AND or child.home != gate.home:
            return f"or gate {gate_id} is fed by {child.kind.name.lower()} gate {kid} at node {child.home}"

    return None


def check_structuredness(circuit: StructuredCircuit) -> Verdict:
    """Home and edge rules of complete structured DNNF, plus acyclicity and reachability."""
    size = len(circuit.vtree)
    checks = {
        GateKind.LITERAL: _check_inputs,
        GateKind.TRUE: _check_inputs,
        GateKind.FALSE: _check_inputs,
        GateKind.AND: _check_and,
        GateKind.OR: _check_or,
    }

    for gate_id, gate in enumerate(circuit.gates):
        if not 0 <= gate.home < size:
            return Verdict.failed(f"gate {gate_id} is homed at unknown node {gate.home}")
        if any(not 0 <= kid < gate_id for kid in gate.inputs):
            return Verdict.failed(f"gate {gate_id} is not in topological order")
        reason = checks[gate.kind](circuit, gate_id)
        if reason:
            return Verdict.failed(reason)

    if not circuit.outputs:
        return Verdict.failed("circuit has no outputs")
    reached = [False] * len(circuit.gates)
    for name, gate_id in circuit.outputs.items():
        if not 0 <= gate_id < len(circuit.gates):
            return Verdict.failed(f"output {name!r} points at unknown gate {gate_id}")
        if circuit.gates[gate_id].home != circuit.vtree.root:
            return Verdict.failed(f"output {name!r} is not homed at the vtree root")
        reached[gate_id] = True
    for gate_id in reversed(range(len(circuit.gates))):
        if reached[gate_id]:
            for kid in circuit.gates[gate_id].inputs:
                reached[kid] = True
    if not all(reached):
        return Verdict.failed(f"gate {reached.index(False)} is unreachable from the outputs")

    return Verdict.passed()


def check_determinism_bruteforce(
    circuit: StructuredCircuit, max_vars: int | None = None
) -> Verdict:
    """No assignment satisfies two inputs of the same or gate."""
    limit = max_vars or engine_setting("BRUTEFORCE_MAX_VARS")
    if len(circuit.variables) > limit:
        raise OracleLimitExceeded(
            f"determinism audit is limited to {limit} variables, got {len(circuit.variables)}"
        )

    tables = gate_tables(circuit)
    for gate_id, gate in enumerate(circuit.gates):
        if gate.kind is not GateKind.OR or len(gate.inputs) < 2:
            continue
        hits = numpy.sum([tables[kid] for kid in gate.inputs], axis=0, dtype=numpy.int64)
        if (hits > 1).any():
            row = int(numpy.argmax(hits > 1))
            return Verdict.failed(
                f"or gate {gate_id} has two true inputs under assignment row {row}"
            )

    return Verdict.passed()


def audited_deterministic(
    circuit: StructuredCircuit, max_vars: int | None = None
) -> StructuredCircuit:
    """``circuit`` flagged deterministic once the brute-force audit passes."""
    if circuit.deterministic:
        return circuit

    limit = max_vars or engine_setting("VERIFY_MAX_VARS")
    if len(circuit.variables) > limit:
        raise DeterminismRequired(
            f"cannot audit determinism over {len(circuit.variables)} variables, "
            f"the limit is {limit}"
        )
    verdict = check_determinism_bruteforce(circuit, limit)
    if not verdict:
        raise DeterminismRequired(verdict.reason)

    return replace(circuit, deterministic=True)
