from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from utils.exceptions import MissingVariable, StructureError

FALSE_SINK = 0
TRUE_SINK = 1
SINKS = (FALSE_SINK, TRUE_SINK)


@dataclass(frozen=True)
class Obdd:
    """Decision diagram read along ``order``.

    ``nodes`` maps an id (2 and up) to ``(variable, lo, hi)``; ids 0 and 1
    are the sinks. ``complete`` means every path tests every variable.
    """

    order: tuple[int, ...]
    nodes: Mapping[int, tuple[int, int, int]] = field(default_factory=dict)
    source: int = FALSE_SINK
    complete: bool = False

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise StructureError("variable order repeats a variable")
        level = self.level_of
        for node, (variable, lo, hi) in self.nodes.items():
            if node in SINKS:
                raise StructureError(f"node id {node} is reserved for a sink")
            if variable not in level:
                raise StructureError(f"node {node} tests {variable}, which is not in the order")
            for child in (lo, hi):
                if child in SINKS:
                    continue
                if child not in self.nodes:
                    raise StructureError(f"node {node} points at unknown node {child}")
                if level[self.nodes[child][0]] <= level[variable]:
                    raise StructureError(f"edge {node} -> {child} goes against the order")
        if self.source not in SINKS and self.source not in self.nodes:
            raise StructureError(f"source {self.source} is not a node")

    @cached_property
    def level_of(self) -> dict[int, int]:
        return {variable: level for level, variable in enumerate(self.order)}

    def level(self, node: int) -> int:
        if node in SINKS:
            return len(self.order)

        return self.level_of[self.nodes[node][0]]

    @cached_property
    def reachable(self) -> tuple[int, ...]:
        seen, stack = {self.source}, [self.source]
        while stack:
            node = stack.pop()
            if node in SINKS:
                continue
            for child in self.nodes[node][1:]:
                if child not in seen:
                    seen.add(child)
                    stack.append(child)

        return tuple(sorted(seen - set(SINKS)))

    def __len__(self) -> int:
        return len(self.reachable)

    def layers(self) -> dict[int, list[int]]:
        layers: dict[int, list[int]] = {variable: [] for variable in self.order}
        for node in self.reachable:
            layers[self.nodes[node][0]].append(node)

        return layers

    @property
    def width(self) -> int:
        return max((len(nodes) for nodes in self.layers().values()), default=0)

    def evaluate(self, assignment: Mapping[int, bool]) -> bool:
        node = self.source
        while node not in SINKS:
            variable, lo, hi = self.nodes[node]
            if variable not in assignment:
                raise MissingVariable(f"assignment leaves {variable} unset")
            node = hi if assignment[variable] else lo

        return node == TRUE_SINK

    def dump(self) -> str:
        lines = [f"obdd order {' '.join(map(str, self.order))} source {self.source}"]
        lines += [
            f"{node} {variable} {lo} {hi}"
            for node, (variable, lo, hi) in sorted(self.nodes.items())
        ]

        return "\n".join(lines) + "\n"
