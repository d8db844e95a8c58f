from typing import Mapping, Sequence

import numpy

from utils.exceptions import DeterminismRequired, MissingVariable

from .models import GateKind, StructuredCircuit


def evaluate(circuit: StructuredCircuit, output: str, assignment: Mapping[int, bool]) -> bool:
    missing = [v for v in circuit.variables if v not in assignment]
    if missing:
        raise MissingVariable(f"assignment leaves {missing} unset")

    target = circuit.output(output)
    values: list[bool] = []
    for gate in circuit.gates[: target + 1]:
        if gate.kind is GateKind.LITERAL:
            values.append(bool(assignment[gate.variable]) == (gate.literal > 0))
        elif gate.is_constant:
            values.append(gate.kind is GateKind.TRUE)
        elif gate.kind is GateKind.AND:
            values.append(all(values[kid] for kid in gate.inputs))
        else:
            values.append(any(values[kid] for kid in gate.inputs))

    return values[target]


def assignment_columns(variables: Sequence[int]) -> dict[int, numpy.ndarray]:
    """Row ``i`` of the table assigns ``variables[j]`` the bit ``j`` of ``i``."""
    rows = numpy.arange(2 ** len(variables), dtype=numpy.int64)

    return {
        variable: ((rows >> position) & 1).astype(bool)
        for position, variable in enumerate(variables)
    }


def gate_tables(
    circuit: StructuredCircuit, variables: Sequence[int] | None = None
) -> list[numpy.ndarray]:
    variables = circuit.variables if variables is None else tuple(variables)
    missing = set(circuit.variables) - set(variables)
    if missing:
        raise MissingVariable(f"truth table lacks variables {sorted(missing)}")

    columns = assignment_columns(variables)
    rows = 2 ** len(variables)
    tables: list[numpy.ndarray] = []
    for gate in circuit.gates:
        if gate.kind is GateKind.LITERAL:
            column = columns[gate.variable]
            tables.append(column if gate.literal > 0 else ~column)
        elif gate.is_constant:
            tables.append(numpy.full(rows, gate.kind is GateKind.TRUE))
        elif gate.kind is GateKind.AND:
            tables.append(numpy.logical_and.reduce([tables[kid] for kid in gate.inputs]))
        elif gate.inputs:
            tables.append(numpy.logical_or.reduce([tables[kid] for kid in gate.inputs]))
        else:
            tables.append(numpy.zeros(rows, dtype=bool))

    return tables


def truth_table(
    circuit: StructuredCircuit, output: str = "main", variables: Sequence[int] | None = None
) -> numpy.ndarray:
    target = circuit.output(output)

    return gate_tables(circuit, variables)[target]


def count_models(circuit: StructuredCircuit, output: str = "main") -> int:
    """Models over the labeled vtree variables, by the product/sum recurrence."""
    if not circuit.deterministic:
        raise DeterminismRequired("model counting needs a circuit flagged deterministic")

    vtree = circuit.vtree
    target = circuit.output(output)
    counts: list[int] = []
    for gate in circuit.gates[: target + 1]:
        if gate.kind is GateKind.LITERAL:
            counts.append(1)
        elif gate.is_constant:
            # a constant on a labeled leaf ranges over that leaf's variable
            free = len(vtree.scopes[gate.home])
            counts.append(2**free if gate.kind is GateKind.TRUE else 0)
        elif gate.kind is GateKind.AND:
            left, right = gate.inputs
            counts.append(counts[left] * counts[right])
        else:
            counts.append(sum(counts[kid] for kid in gate.inputs))

    return counts[target]
