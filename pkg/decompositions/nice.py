from utils.exceptions import InvalidDecomposition

from .models import NiceTreeDecomposition, NodeKind, TreeDecomposition
from .validation import check_tree


class _NiceBuilder:
    def __init__(self):
        self.bags: list[frozenset[int]] = []
        self.children: list[tuple[int, ...]] = []
        self.kinds: list[NodeKind] = []
        self.variables: list[int | None] = []

    def add(self, bag, kind, variable=None, children=()) -> int:
        self.bags.append(frozenset(bag))
        self.children.append(tuple(children))
        self.kinds.append(kind)
        self.variables.append(variable)

        return len(self.bags) - 1

    def leaf(self) -> int:
        return self.add(frozenset(), NodeKind.LEAF)

    def join(self, left: int, right: int) -> int:
        return self.add(self.bags[left], NodeKind.JOIN, children=(left, right))

    def transition(self, node: int, target: frozenset[int]) -> int:
        """Forget what ``target`` lacks, then introduce what it adds, by ascending id."""
        for variable in sorted(self.bags[node] - target):
            node = self.add(self.bags[node] - {variable}, NodeKind.FORGET, variable, (node,))
        for variable in sorted(target - self.bags[node]):
            node = self.add(
                self.bags[node] | {variable}, NodeKind.INTRODUCE, variable, (node,)
            )

        return node

    def build(self, root: int) -> NiceTreeDecomposition:
        return NiceTreeDecomposition(
            tuple(self.bags),
            tuple(self.children),
            root,
            kinds=tuple(self.kinds),
            variables=tuple(self.variables),
        )


def make_nice(decomposition: TreeDecomposition) -> NiceTreeDecomposition:
    """Rewrite into leaf/introduce/forget/join nodes with empty leaf and root bags.

    Node ids come out in post-order, so every child id is smaller than its
    parent's and the root is the last node. Joins of more than two children
    are binarized as left combs.
    """
    verdict = check_tree(decomposition)
    if not verdict:
        raise InvalidDecomposition(verdict.reason)

    builder = _NiceBuilder()
    top_of: dict[int, int] = {}

    for node in decomposition.postorder:
        bag = decomposition.bags[node]
        tops = [
            builder.transition(top_of[kid], bag)
            for kid in decomposition.children[node]
        ]
        if not tops:
            tops = [builder.transition(builder.leaf(), bag)]
        top = tops[0]
        for other in tops[1:]:
            top = builder.join(top, other)
        top_of[node] = top

    root = builder.transition(top_of[decomposition.root], frozenset())

    return builder.build(root)


def forget_order(decomposition: NiceTreeDecomposition) -> list[int]:
    return [
        decomposition.variables[node]
        for node in range(len(decomposition))
        if decomposition.kinds[node] is NodeKind.FORGET
    ]
