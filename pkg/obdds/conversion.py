from circuits.models import CircuitBuilder, StructuredCircuit, VtreeBuilder
from utils.exceptions import BoundViolation, UnsupportedOperation

from .models import SINKS, TRUE_SINK, Obdd


def obdd_to_circuit(obdd: Obdd) -> StructuredCircuit:
    """Deterministic circuit on a right comb along the order, one or-gate per decision node.

    The comb ends in an unlabeled leaf carrying the sinks as constants, so
    the circuit has exactly the width of the OBDD.
    """
    if not obdd.complete:
        raise UnsupportedOperation("conversion needs a complete OBDD")

    vtree = VtreeBuilder.right_comb(obdd.order, tail=True)
    builder = CircuitBuilder(vtree)
    # comb node of level i: the parent of the leaf of order[i]
    comb = [vtree.parent[vtree.leaf_of[variable]] for variable in obdd.order]
    sink_leaf = vtree.root if not obdd.order else vtree.right(comb[-1])

    gates: dict[int, int] = {
        sink: builder.constant(sink == TRUE_SINK, sink_leaf) for sink in SINKS
    }
    for node in sorted(obdd.reachable, key=obdd.level, reverse=True):
        variable, lo, hi = obdd.nodes[node]
        home = comb[obdd.level_of[variable]]
        branches = (
            builder.conjunction(builder.literal(variable), gates[hi], home),
            builder.conjunction(builder.literal(-variable), gates[lo], home),
        )
        gates[node] = builder.disjunction(branches, home)

    builder.outputs["main"] = gates[obdd.source]
    circuit = builder.build(deterministic=True)

    if circuit.width != obdd.width:
        raise BoundViolation(f"circuit width {circuit.width} differs from OBDD width {obdd.width}")

    return circuit
