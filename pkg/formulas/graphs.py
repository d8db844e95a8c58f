from itertools import combinations

import networkx

from .models import CnfFormula


def primal_graph(formula: CnfFormula) -> networkx.Graph:
    """Variables 1..num_vars as vertices, one clique per clause."""
    graph = networkx.Graph()
    graph.add_nodes_from(formula.variables)

    for clause in formula.clauses:
        graph.add_edges_from(combinations(sorted(clause.variables), 2))

    return graph
