from collections import defaultdict

import networkx

from utils.verdicts import Verdict

from .models import NiceTreeDecomposition, NodeKind, TreeDecomposition


def check_tree(decomposition: TreeDecomposition) -> Verdict:
    """The node structure is a single tree rooted at ``root``, with connected occurrences."""
    size = len(decomposition.bags)
    if len(decomposition.children) != size:
        return Verdict.failed("bags and children differ in length")
    if not 0 <= decomposition.root < size:
        return Verdict.failed(f"root {decomposition.root} is not a node")

    seen = {decomposition.root}
    stack = [decomposition.root]
    while stack:
        node = stack.pop()
        for kid in decomposition.children[node]:
            if not 0 <= kid < size or kid in seen:
                return Verdict.failed(f"node {kid} is reached twice or does not exist")
            seen.add(kid)
            stack.append(kid)
    if len(seen) != size:
        return Verdict.failed(f"{size - len(seen)} nodes are not reachable from the root")

    tops: dict[int, int] = defaultdict(int)
    for node, bag in enumerate(decomposition.bags):
        parent = decomposition.parent[node]
        for vertex in bag:
            if parent is None or vertex not in decomposition.bags[parent]:
                tops[vertex] += 1
    for vertex, count in sorted(tops.items()):
        if count > 1:
            return Verdict.failed(f"bags holding vertex {vertex} are disconnected")

    return Verdict.passed()


def _check_nice_shape(decomposition: NiceTreeDecomposition) -> Verdict:
    size = len(decomposition.bags)
    if len(decomposition.kinds) != size or len(decomposition.variables) != size:
        return Verdict.failed("node kinds do not cover every node")
    if decomposition.bags[decomposition.root]:
        return Verdict.failed("root bag is not empty")

    for node, kind in enumerate(decomposition.kinds):
        bag = decomposition.bags[node]
        kids = decomposition.children[node]
        variable = decomposition.variables[node]
        label = f"node {node} ({decomposition.describe(node)})"

        if kind is NodeKind.LEAF:
            if kids or bag:
                return Verdict.failed(f"{label} must be a childless empty bag")
        elif kind is NodeKind.JOIN:
            if len(kids) != 2 or any(decomposition.bags[kid] != bag for kid in kids):
                return Verdict.failed(f"{label} needs two children with its own bag")
        elif len(kids) != 1:
            return Verdict.failed(f"{label} needs exactly one child")
        elif kind is NodeKind.INTRODUCE:
            below = decomposition.bags[kids[0]]
            if variable in below or bag != below | {variable}:
                return Verdict.failed(f"{label} does not introduce {variable}")
        elif kind is NodeKind.FORGET:
            below = decomposition.bags[kids[0]]
            if variable not in below or bag != below - {variable}:
                return Verdict.failed(f"{label} does not forget {variable}")

    return Verdict.passed()


def validate(decomposition: TreeDecomposition, graph: networkx.Graph) -> Verdict:
    verdict = check_tree(decomposition)
    if not verdict:
        return verdict

    occurrences: dict[int, set[int]] = defaultdict(set)
    for node, bag in enumerate(decomposition.bags):
        for vertex in bag:
            occurrences[vertex].add(node)

    for vertex in occurrences:
        if vertex not in graph:
            return Verdict.failed(f"bag vertex {vertex} is not a graph vertex")
    for vertex in graph.nodes:
        if vertex not in occurrences:
            return Verdict.failed(f"vertex {vertex} is in no bag")
    for u, v in graph.edges:
        if u != v and not occurrences[u] & occurrences[v]:
            return Verdict.failed(f"edge {{{u}, {v}}} is not covered by any bag")

    if isinstance(decomposition, NiceTreeDecomposition):
        return _check_nice_shape(decomposition)

    return Verdict.passed()
