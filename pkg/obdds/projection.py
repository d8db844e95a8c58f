"""Existential quantification of complete OBDDs by subset construction.

A state is the set of nodes of one layer that some extension over the
quantified variables can reach. Quantified layers are crossed by taking
both branches of every node; kept layers branch on the variable as usual.
The sink states are the subsets of {0, 1}.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from utils.exceptions import BoundViolation, UnknownVariable, UnsupportedOperation

from .models import FALSE_SINK, SINKS, TRUE_SINK, Obdd

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubsetProjection:
    exists: Obdd
    not_exists: Obdd
    subsets: dict[int, frozenset[int]]


def _closure(obdd: Obdd, state: frozenset[int], forgotten: frozenset[int]) -> frozenset[int]:
    while True:
        sample = next(iter(state))
        if sample in SINKS or obdd.nodes[sample][0] not in forgotten:
            return state
        state = frozenset(child for node in state for child in obdd.nodes[node][1:])


def obdd_project_dual(obdd: Obdd, forgotten: Iterable[int]) -> SubsetProjection:
    """Both ``exists forgotten. b`` and its negation, read off one subset automaton.

    The two diagrams share their decision nodes and differ in the sinks:
    a sink state holding 1 accepts for the first, the state {0} for the second.
    """
    if not obdd.complete:
        raise UnsupportedOperation("subset projection needs a complete OBDD")
    forgotten = frozenset(forgotten)
    unknown = sorted(forgotten - set(obdd.order))
    if unknown:
        raise UnknownVariable(f"cannot project unknown variables {unknown}")

    order = tuple(v for v in obdd.order if v not in forgotten)
    ids: dict[frozenset[int], int] = {}
    subsets: dict[int, frozenset[int]] = {}
    transitions: dict[int, tuple[int, frozenset[int], frozenset[int]]] = {}

    def state_id(state: frozenset[int]) -> int | frozenset[int]:
        if next(iter(state)) in SINKS:
            return state
        if state not in ids:
            ids[state] = len(ids) + len(SINKS)
            subsets[ids[state]] = state
            queue.append(state)
        return ids[state]

    queue: deque[frozenset[int]] = deque()
    start = state_id(_closure(obdd, frozenset((obdd.source,)), forgotten))
    while queue:
        state = queue.popleft()
        variable = obdd.nodes[next(iter(state))][0]
        lo = _closure(obdd, frozenset(obdd.nodes[n][1] for n in state), forgotten)
        hi = _closure(obdd, frozenset(obdd.nodes[n][2] for n in state), forgotten)
        transitions[ids[state]] = (variable, lo, hi)
        state_id(lo)
        state_id(hi)

    def build(accepting) -> Obdd:
        def target(state: frozenset[int]) -> int:
            if next(iter(state)) in SINKS:
                return TRUE_SINK if accepting(state) else FALSE_SINK
            return ids[state]

        nodes = {
            node: (variable, target(lo), target(hi))
            for node, (variable, lo, hi) in transitions.items()
        }
        source = start if isinstance(start, int) else target(start)

        return Obdd(order, nodes, source, complete=True)

    exists = build(lambda state: TRUE_SINK in state)
    not_exists = build(lambda state: state == frozenset((FALSE_SINK,)))

    bound = 2**obdd.width
    if exists.width > bound:
        raise BoundViolation(f"projected OBDD width {exists.width} exceeds 2^{obdd.width}")
    logger.info(
        "OBDD projection of %d variables: width %d -> %d, %d subset states",
        len(forgotten),
        obdd.width,
        exists.width,
        len(subsets),
    )

    return SubsetProjection(exists, not_exists, subsets)


def obdd_project(obdd: Obdd, forgotten: Iterable[int]) -> Obdd:
    return obdd_project_dual(obdd, forgotten).exists
