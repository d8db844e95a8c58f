import logging
from typing import Sequence

import numpy

from formulas.models import CnfFormula
from utils.conf import engine_setting
from utils.exceptions import OracleLimitExceeded, UnknownVariable

from .models import FALSE_SINK, SINKS, TRUE_SINK, Obdd

logger = logging.getLogger(__name__)


def _formula_table(formula: CnfFormula, order: Sequence[int]) -> numpy.ndarray:
    """Truth table with ``order[0]`` as the most significant bit of the row."""
    size = len(order)
    rows = numpy.arange(2**size, dtype=numpy.int64)
    bit_of = {variable: size - 1 - level for level, variable in enumerate(order)}

    table = numpy.ones(rows.size, dtype=bool)
    for clause in formula.clauses:
        if clause.tautological:
            continue
        satisfied = numpy.zeros(rows.size, dtype=bool)
        for literal in clause.literals:
            column = ((rows >> bit_of[literal.variable]) & 1).astype(bool)
            satisfied |= column if literal.positive else ~column
        table &= satisfied

    return table


def obdd_from_cnf_bruteforce(formula: CnfFormula, order: Sequence[int]) -> Obdd:
    """Complete OBDD with one node per distinct residual function on each level."""
    order = tuple(order)
    missing = sorted(set(formula.variables) - set(order))
    if missing:
        raise UnknownVariable(f"order misses formula variables {missing}")
    limit = engine_setting("BRUTEFORCE_MAX_VARS")
    if len(order) > limit:
        raise OracleLimitExceeded(f"brute-force OBDDs stop at {limit} variables, got {len(order)}")

    size = len(order)
    table = _formula_table(formula, order)
    # level ``size`` holds single values, they are the sinks
    ids = {size: numpy.array([FALSE_SINK, TRUE_SINK])}
    classes = {size: table.astype(numpy.int64)}
    nodes: dict[int, tuple[int, int, int]] = {}

    for level in reversed(range(size)):
        residuals = table.reshape(2**level, 2 ** (size - level))
        _, first, inverse = numpy.unique(
            residuals, axis=0, return_index=True, return_inverse=True
        )
        below_class, below_ids = classes[level + 1], ids[level + 1]
        level_ids = []
        for row in first:
            lo = int(below_ids[below_class[2 * row]])
            hi = int(below_ids[below_class[2 * row + 1]])
            node = len(nodes) + len(SINKS)
            nodes[node] = (order[level], lo, hi)
            level_ids.append(node)
        ids[level] = numpy.array(level_ids)
        classes[level] = inverse.reshape(-1)

    source = int(ids[0][classes[0][0]]) if size else int(table[0])
    obdd = Obdd(order, nodes, source, complete=True)
    logger.debug("brute-force OBDD over %d variables: %d nodes, width %d", size, len(nodes), obdd.width)

    return obdd


def complete_obdd(obdd: Obdd) -> Obdd:
    """Insert pass-through nodes so that every path tests every variable."""
    order = obdd.order
    nodes = dict(obdd.nodes)
    chains: dict[tuple[int, int], int] = {}
    next_id = max(nodes, default=TRUE_SINK) + 1

    def reach(level: int, target: int) -> int:
        """Node at ``level`` leading straight to ``target``."""
        nonlocal next_id
        target_level = obdd.level(target)
        path = target
        for current in reversed(range(level, target_level)):
            key = (current, target)
            if key not in chains:
                chains[key] = next_id
                nodes[next_id] = (order[current], path, path)
                next_id += 1
            path = chains[key]

        return path

    for node, (variable, lo, hi) in obdd.nodes.items():
        below = obdd.level_of[variable] + 1
        nodes[node] = (variable, reach(below, lo), reach(below, hi))
    source = reach(0, obdd.source)

    return Obdd(order, nodes, source, complete=True)


def obdd_negate(obdd: Obdd) -> Obdd:
    swap = {FALSE_SINK: TRUE_SINK, TRUE_SINK: FALSE_SINK}
    nodes = {
        node: (variable, swap.get(lo, lo), swap.get(hi, hi))
        for node, (variable, lo, hi) in obdd.nodes.items()
    }

    return Obdd(obdd.order, nodes, swap.get(obdd.source, obdd.source), obdd.complete)


def obdd_count_models(obdd: Obdd) -> int:
    """Models over the whole order; an edge skipping levels counts every skipped value."""
    counts = {FALSE_SINK: 0, TRUE_SINK: 1}
    for node in sorted(obdd.reachable, key=obdd.level, reverse=True):
        _, lo, hi = obdd.nodes[node]
        level = obdd.level(node)
        counts[node] = sum(
            counts[child] * 2 ** (obdd.level(child) - level - 1) for child in (lo, hi)
        )

    return counts[obdd.source] * 2 ** obdd.level(obdd.source)


def obdd_reduce(obdd: Obdd) -> Obdd:
    """Merge nodes of a layer with the same children, bottom-up; pass-through nodes stay."""
    replace: dict[int, int] = {}
    kept: dict[int, tuple[int, int, int]] = {}
    layers = obdd.layers()
    for variable in reversed(obdd.order):
        seen: dict[tuple[int, int], int] = {}
        for node in layers[variable]:
            _, lo, hi = obdd.nodes[node]
            key = (replace.get(lo, lo), replace.get(hi, hi))
            if key in seen:
                replace[node] = seen[key]
            else:
                seen[key] = node
                kept[node] = (variable, *key)

    return Obdd(obdd.order, kept, replace.get(obdd.source, obdd.source), obdd.complete)
