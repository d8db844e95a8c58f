from dataclasses import dataclass
from enum import Enum
from functools import cached_property


@dataclass(frozen=True)
class TreeDecomposition:
    """A rooted tree of bags; node ids index ``bags`` and ``children``."""

    bags: tuple[frozenset[int], ...]
    children: tuple[tuple[int, ...], ...]
    root: int

    def __len__(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags), default=0) - 1

    @property
    def max_bag(self) -> int:
        return self.width + 1

    @cached_property
    def parent(self) -> tuple[int | None, ...]:
        parents: list[int | None] = [None] * len(self.bags)
        for node, kids in enumerate(self.children):
            for kid in kids:
                parents[kid] = node

        return tuple(parents)

    @cached_property
    def postorder(self) -> tuple[int, ...]:
        order, stack = [], [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            stack.append((node, True))
            stack.extend((kid, False) for kid in reversed(self.children[node]))

        return tuple(order)


class NodeKind(str, Enum):
    LEAF = "leaf"
    INTRODUCE = "introduce"
    FORGET = "forget"
    JOIN = "join"


@dataclass(frozen=True)
class NiceTreeDecomposition(TreeDecomposition):
    kinds: tuple[NodeKind, ...] = ()
    variables: tuple[int | None, ...] = ()

    def describe(self, node: int) -> str:
        kind = self.kinds[node]
        if kind in (NodeKind.INTRODUCE, NodeKind.FORGET):
            return f"{kind.value}({self.variables[node]})"

        return kind.value
