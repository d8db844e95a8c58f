from circuits.models import Gate, GateKind, StructuredCircuit, Vtree, VtreeBuilder


def two_leaf_vtree(second: int | None = 2) -> Vtree:
    builder = VtreeBuilder()
    builder.internal(builder.leaf(1), builder.leaf(second))

    return builder.build()


def equivalence_circuit() -> StructuredCircuit:
    """x1 <-> x2 on ``main`` and x1 and not x2 on ``other``: two or-gates at the root."""
    gates = (
        Gate(GateKind.LITERAL, 0, literal=1),
        Gate(GateKind.LITERAL, 0, literal=-1),
        Gate(GateKind.LITERAL, 1, literal=2),
        Gate(GateKind.LITERAL, 1, literal=-2),
        Gate(GateKind.AND, 2, (0, 2)),
        Gate(GateKind.AND, 2, (1, 3)),
        Gate(GateKind.AND, 2, (0, 3)),
        Gate(GateKind.OR, 2, (4, 5)),
        Gate(GateKind.OR, 2, (6,)),
    )

    return StructuredCircuit(two_leaf_vtree(), gates, {"main": 7, "other": 8}, True)


def duplicated_and_circuit() -> StructuredCircuit:
    """Two and-gates reading the same pair under one or-gate."""
    gates = (
        Gate(GateKind.LITERAL, 0, literal=1),
        Gate(GateKind.LITERAL, 1, literal=2),
        Gate(GateKind.AND, 2, (0, 1)),
        Gate(GateKind.AND, 2, (0, 1)),
        Gate(GateKind.OR, 2, (2, 3)),
    )

    return StructuredCircuit(two_leaf_vtree(), gates, {"main": 4}, False)


def constant_leaf_circuit(left_value: bool, right_value: bool) -> StructuredCircuit:
    """(x1 and c0) or (not x1 and c1) over a vtree whose right leaf is unlabeled."""
    gates = (
        Gate(GateKind.LITERAL, 0, literal=1),
        Gate(GateKind.LITERAL, 0, literal=-1),
        Gate(GateKind.TRUE if left_value else GateKind.FALSE, 1),
        Gate(GateKind.TRUE if right_value else GateKind.FALSE, 1),
        Gate(GateKind.AND, 2, (0, 2)),
        Gate(GateKind.AND, 2, (1, 3)),
        Gate(GateKind.OR, 2, (4, 5)),
    )

    return StructuredCircuit(two_leaf_vtree(None), gates, {"main": 6}, True)
