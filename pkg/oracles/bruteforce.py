"""Brute-force semantics for checking the engines.

Nothing here goes through circuit or OBDD evaluation: formulas are read
clause by clause and circuits gate by gate with a private evaluator.
"""
import itertools
from typing import Iterable, Mapping

import numpy

from circuits.models import GateKind
from formulas.models import CnfFormula, QbfFormula, Quantifier
from utils.conf import engine_setting
from utils.exceptions import MissingVariable, OracleLimitExceeded


def _check_size(count: int, what: str) -> None:
    limit = engine_setting("ORACLE_MAX_VARS")
    if count > limit:
        raise OracleLimitExceeded(f"{what} has {count} variables, the oracle stops at {limit}")


def cnf_truth_table(formula: CnfFormula) -> numpy.ndarray:
    """Bit ``v - 1`` of row ``i`` is the value of variable ``v``."""
    _check_size(formula.num_vars, "formula")

    rows = numpy.arange(2**formula.num_vars, dtype=numpy.int64)
    table = numpy.ones(rows.size, dtype=bool)
    for clause in formula.clauses:
        if clause.tautological:
            continue
        satisfied = numpy.zeros(rows.size, dtype=bool)
        for literal in clause.literals:
            bit = ((rows >> (literal.variable - 1)) & 1).astype(bool)
            satisfied |= bit if literal.positive else ~bit
        table &= satisfied

    return table


def cnf_model_count(formula: CnfFormula) -> int:
    return int(numpy.count_nonzero(cnf_truth_table(formula)))


def _quantified_table(qbf: QbfFormula) -> numpy.ndarray:
    """Matrix table with one axis per variable, quantified axes reduced to size 1."""
    num_vars = qbf.matrix.num_vars
    table = cnf_truth_table(qbf.matrix).reshape((2,) * num_vars)

    for block in reversed(qbf.prefix):
        axes = tuple(num_vars - variable for variable in block.variables)
        reduce = numpy.any if block.quantifier is Quantifier.EXISTS else numpy.all
        table = reduce(table, axis=axes, keepdims=True)

    return table


def _free_index(qbf: QbfFormula, assignment: Mapping[int, bool]) -> tuple[int, ...]:
    missing = [v for v in qbf.free_variables if v not in assignment]
    if missing:
        raise MissingVariable(f"free variables {missing} are unassigned")
    quantified = qbf.quantified_variables

    return tuple(
        0 if variable in quantified else int(bool(assignment[variable]))
        for variable in range(qbf.matrix.num_vars, 0, -1)
    )


def qbf_eval(qbf: QbfFormula, assignment: Mapping[int, bool] | None = None) -> bool:
    table = _quantified_table(qbf)

    return bool(table[_free_index(qbf, assignment or {})])


def qbf_count(qbf: QbfFormula) -> int:
    """Free assignments under which the formula is true."""
    return int(numpy.count_nonzero(_quantified_table(qbf)))


def qbf_eval_flat(qbf: QbfFormula, assignment: Mapping[int, bool] | None = None) -> bool:
    """Variable-by-variable expansion, independent of the table-based ``qbf_eval``."""
    _check_size(qbf.matrix.num_vars, "formula")
    assignment = dict(assignment or {})
    missing = [v for v in qbf.free_variables if v not in assignment]
    if missing:
        raise MissingVariable(f"free variables {missing} are unassigned")

    prefix = [
        (variable, block.quantifier)
        for block in qbf.prefix
        for variable in sorted(block.variables)
    ]

    def expand(position: int) -> bool:
        if position == len(prefix):
            return qbf.matrix.evaluate(assignment)
        variable, quantifier = prefix[position]
        outcomes = []
        for value in (False, True):
            assignment[variable] = value
            outcome = expand(position + 1)
            outcomes.append(outcome)
            if outcome is (quantifier is Quantifier.EXISTS):
                break
        del assignment[variable]

        return any(outcomes) if quantifier is Quantifier.EXISTS else all(outcomes)

    return expand(0)


def _gate_value(circuit, gate_id: int, assignment: Mapping[int, bool], memo: dict) -> bool:
    if gate_id in memo:
        return memo[gate_id]
    gate = circuit.gates[gate_id]
    if gate.kind is GateKind.LITERAL:
        value = assignment[abs(gate.literal)] == (gate.literal > 0)
    elif gate.is_constant:
        value = gate.kind is GateKind.TRUE
    elif gate.kind is GateKind.AND:
        value = all(_gate_value(circuit, kid, assignment, memo) for kid in gate.inputs)
    else:
        value = any(_gate_value(circuit, kid, assignment, memo) for kid in gate.inputs)
    memo[gate_id] = value

    return value


def shape_oracle(
    circuit, node: int, tau: Mapping[int, bool], forgotten: Iterable[int]
) -> frozenset[int]:
    """Gates of ``node`` (or-gates, or inputs at a leaf) satisfiable by some extension of ``tau``.

    ``tau`` assigns the kept variables below ``node``; the extension ranges
    over the forgotten ones.
    """
    scope = circuit.vtree.scopes[node]
    forgot = sorted(scope & frozenset(forgotten))
    if len(forgot) > engine_setting("BRUTEFORCE_MAX_VARS"):
        raise OracleLimitExceeded(f"{len(forgot)} forgotten variables below node {node}")

    candidates = [
        gate_id
        for gate_id in circuit.labeling[node]
        if circuit.gates[gate_id].kind is not GateKind.AND
    ]
    shape: set[int] = set()
    for values in itertools.product((False, True), repeat=len(forgot)):
        full = {**tau, **dict(zip(forgot, values))}
        memo: dict[int, bool] = {}
        shape.update(g for g in candidates if _gate_value(circuit, g, full, memo))

    return frozenset(shape)
