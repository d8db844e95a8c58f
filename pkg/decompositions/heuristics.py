import heapq
import itertools
import logging
from typing import Sequence

import networkx

from utils.conf import engine_setting
from utils.exceptions import UnsupportedOperation

from .models import TreeDecomposition

logger = logging.getLogger(__name__)


def _single_empty_bag() -> TreeDecomposition:
    return TreeDecomposition((frozenset(),), ((),), 0)


def decomposition_from_order(
    graph: networkx.Graph, order: Sequence[int]
) -> TreeDecomposition:
    """Bags of the elimination game played along ``order``."""
    if not order:
        return _single_empty_bag()

    adjacency = {v: set(graph[v]) - {v} for v in graph}
    position = {vertex: i for i, vertex in enumerate(order)}
    bags: list[frozenset[int]] = []
    parents: list[int | None] = []

    for vertex in order:
        neighbours = adjacency.pop(vertex)
        bags.append(frozenset(neighbours | {vertex}))
        parents.append(min((position[u] for u in neighbours), default=None))
        for u in neighbours:
            adjacency[u] |= neighbours - {u}
            adjacency[u].discard(vertex)

    root = len(order) - 1
    children: list[list[int]] = [[] for _ in order]
    for node, parent in enumerate(parents):
        if node == root:
            continue
        children[root if parent is None else parent].append(node)

    return TreeDecomposition(tuple(bags), tuple(map(tuple, children)), root)


def _eliminate(adjacency: dict[int, frozenset[int]], vertex: int):
    neighbours = adjacency[vertex]
    reduced = {}
    for u, around in adjacency.items():
        if u == vertex:
            continue
        if u in neighbours:
            around = (around | neighbours) - {u, vertex}
        reduced[u] = around

    return reduced


def _is_simplicial(adjacency, vertex: int) -> bool:
    neighbours = adjacency[vertex]

    return all(neighbours - {u} <= adjacency[u] for u in neighbours)


def exact_decomposition(
    graph: networkx.Graph, max_vertices: int | None = None
) -> TreeDecomposition:
    """Optimal width by branch and bound over elimination orders."""
    limit = max_vertices or engine_setting("EXACT_TREEWIDTH_MAX_VERTICES")
    if graph.number_of_nodes() > limit:
        raise UnsupportedOperation(
            f"exact treewidth is limited to {limit} vertices, "
            f"got {graph.number_of_nodes()}"
        )

    heuristic = _min_fill(graph)
    best = {"width": heuristic.width, "order": None}
    seen: dict[frozenset[int], int] = {}

    def search(adjacency, eliminated: list[int], current: int) -> None:
        if current >= best["width"]:
            return
        if len(adjacency) - 1 <= current:
            best["width"] = max(current, len(adjacency) - 1)
            best["order"] = eliminated + sorted(adjacency)
            return
        key = frozenset(eliminated)
        if seen.get(key, len(graph)) <= current:
            return
        seen[key] = current

        candidates = sorted(adjacency, key=lambda v: (len(adjacency[v]), v))
        simplicial = [v for v in candidates if _is_simplicial(adjacency, v)]
        for vertex in simplicial[:1] or candidates:
            width = max(current, len(adjacency[vertex]))
            if width < best["width"]:
                search(_eliminate(adjacency, vertex), eliminated + [vertex], width)

    search({v: frozenset(graph[v]) - {v} for v in graph}, [], -1)

    if best["order"] is None:
        return heuristic

    logger.debug("exact search improved width %d -> %d", heuristic.width, best["width"])

    return decomposition_from_order(graph, best["order"])


def _fill_in(graph: networkx.Graph, vertex: int) -> int:
    neighbours = list(graph[vertex])

    return sum(
        1 for u, w in itertools.combinations(neighbours, 2) if not graph.has_edge(u, w)
    )


def min_fill_order(graph: networkx.Graph) -> list[int]:
    """Greedy min-fill elimination order, ties broken by degree and then by vertex.

    Scores sit in a lazy heap. Eliminating a vertex only changes the scores
    within distance two of it, so only those are recomputed.
    """
    working = networkx.Graph(graph)
    working.remove_edges_from(list(networkx.selfloop_edges(working)))
    score = {v: (_fill_in(working, v), working.degree(v)) for v in working}
    heap = [(*key, v) for v, key in score.items()]
    heapq.heapify(heap)
    order: list[int] = []

    while heap:
        fill, degree, vertex = heapq.heappop(heap)
        if score.get(vertex) != (fill, degree):
            continue
        neighbours = list(working[vertex])
        touched = set(neighbours)
        for u in neighbours:
            touched.update(working[u])
        touched.discard(vertex)

        working.add_edges_from(itertools.combinations(neighbours, 2))
        working.remove_node(vertex)
        del score[vertex]
        order.append(vertex)

        for u in touched:
            key = (_fill_in(working, u), working.degree(u))
            if key != score[u]:
                score[u] = key
                heapq.heappush(heap, (*key, u))

    return order


def _min_fill(graph: networkx.Graph) -> TreeDecomposition:
    return decomposition_from_order(graph, min_fill_order(graph))


def min_fill_decomposition(
    graph: networkx.Graph, exact: bool | None = None
) -> TreeDecomposition:
    if exact is None:
        exact = engine_setting("EXACT_TREEWIDTH")

    if exact and graph.number_of_nodes() <= engine_setting(
        "EXACT_TREEWIDTH_MAX_VERTICES"
    ):
        decomposition = exact_decomposition(graph)
    else:
        decomposition = _min_fill(graph)

    logger.debug(
        "decomposition of %d vertices: %d bags, width %d",
        graph.number_of_nodes(),
        len(decomposition),
        decomposition.width,
    )

    return decomposition
