from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping

from utils.exceptions import MissingOutput, StructureError


@dataclass(frozen=True)
class Vtree:
    """Rooted full binary tree over variables.

    Node ids are topological: both children of a node have smaller ids and
    the root is the last node. ``labels[t]`` is the variable of leaf ``t``,
    or ``None`` for internal nodes and unlabeled leaves.
    """

    children: tuple[tuple[int, int] | None, ...]
    labels: tuple[int | None, ...]

    def __post_init__(self):
        if not self.children or len(self.children) != len(self.labels):
            raise StructureError("a vtree needs at least one node and a label per node")

        has_parent = [False] * len(self.children)
        seen: set[int] = set()
        for node, kids in enumerate(self.children):
            label = self.labels[node]
            if kids is None:
                if label is not None and (label < 1 or label in seen):
                    raise StructureError(f"leaf {node} has a bad or repeated label {label}")
                if label is not None:
                    seen.add(label)
                continue
            if label is not None:
                raise StructureError(f"internal node {node} carries a label")
            if len(kids) != 2 or not all(0 <= kid < node for kid in kids):
                raise StructureError(f"node {node} must have two children with smaller ids")
            for kid in kids:
                if has_parent[kid]:
                    raise StructureError(f"node {kid} has two parents")
                has_parent[kid] = True

        if has_parent.count(False) != 1:
            raise StructureError("the vtree is not a single tree rooted at its last node")

    def __len__(self) -> int:
        return len(self.children)

    @property
    def root(self) -> int:
        return len(self.children) - 1

    def is_leaf(self, node: int) -> bool:
        return self.children[node] is None

    def is_unlabeled_leaf(self, node: int) -> bool:
        return self.children[node] is None and self.labels[node] is None

    def left(self, node: int) -> int:
        return self.children[node][0]

    def right(self, node: int) -> int:
        return self.children[node][1]

    @cached_property
    def parent(self) -> tuple[int | None, ...]:
        parents: list[int | None] = [None] * len(self.children)
        for node, kids in enumerate(self.children):
            for kid in kids or ():
                parents[kid] = node

        return tuple(parents)

    @cached_property
    def leaf_of(self) -> dict[int, int]:
        return {
            label: node for node, label in enumerate(self.labels) if label is not None
        }

    @cached_property
    def scopes(self) -> tuple[frozenset[int], ...]:
        """Labeled variables below every node."""
        scopes: list[frozenset[int]] = []
        for node, kids in enumerate(self.children):
            if kids is None:
                label = self.labels[node]
                scopes.append(frozenset() if label is None else frozenset((label,)))
            else:
                scopes.append(scopes[kids[0]] | scopes[kids[1]])

        return tuple(scopes)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(sorted(self.leaf_of))

    @property
    def extended(self) -> bool:
        return any(self.is_unlabeled_leaf(node) for node in range(len(self)))

    def unlabel(self, variables: Iterable[int]) -> "Vtree":
        """Same tree, with the leaves of ``variables`` unlabeled."""
        dropped = frozenset(variables)

        return Vtree(
            self.children,
            tuple(None if label in dropped else label for label in self.labels),
        )

    def canonical(self) -> tuple["Vtree", list[int]]:
        """Renumber in left-first post-order; returns the tree and old-to-new ids."""
        order, stack = [], [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded or self.is_leaf(node):
                order.append(node)
                continue
            stack.append((node, True))
            stack.append((self.right(node), False))
            stack.append((self.left(node), False))

        renumber = [0] * len(self)
        for new, old in enumerate(order):
            renumber[old] = new
        children = tuple(
            None if self.is_leaf(old) else (renumber[self.left(old)], renumber[self.right(old)])
            for old in order
        )

        return Vtree(children, tuple(self.labels[old] for old in order)), renumber

    def same_shape(self, other: "Vtree") -> bool:
        return self.canonical()[0] == other.canonical()[0]


class VtreeBuilder:
    def __init__(self):
        self.children: list[tuple[int, int] | None] = []
        self.labels: list[int | None] = []

    def leaf(self, variable: int | None = None) -> int:
        self.children.append(None)
        self.labels.append(variable)

        return len(self.children) - 1

    def internal(self, left: int, right: int) -> int:
        self.children.append((left, right))
        self.labels.append(None)

        return len(self.children) - 1

    def build(self) -> Vtree:
        return Vtree(tuple(self.children), tuple(self.labels))

    @classmethod
    def right_comb(cls, variables: Iterable[int], tail: bool = False) -> Vtree:
        """Linear vtree following ``variables``; ``tail`` adds a last unlabeled leaf."""
        variables = list(variables)
        builder = cls()
        if not variables:
            builder.leaf()
            return builder.build()

        top = builder.leaf() if tail else builder.leaf(variables.pop())
        for variable in reversed(variables):
            top = builder.internal(builder.leaf(variable), top)

        return builder.build()


class GateKind(str, Enum):
    LITERAL = "L"
    TRUE = "T"
    FALSE = "F"
    AND = "A"
    OR = "O"


@dataclass(frozen=True, slots=True)
class Gate:
    kind: GateKind
    home: int
    inputs: tuple[int, ...] = ()
    literal: int = 0

    @property
    def is_input(self) -> bool:
        return self.kind in (GateKind.LITERAL, GateKind.TRUE, GateKind.FALSE)

    @property
    def is_constant(self) -> bool:
        return self.kind in (GateKind.TRUE, GateKind.FALSE)

    @property
    def variable(self) -> int:
        return abs(self.literal)


@dataclass(frozen=True)
class StructuredCircuit:
    """Complete structured DNNF: gates homed on vtree nodes, with named outputs.

    Gates are stored in topological order (inputs have smaller ids).
    ``deterministic`` is the producer's claim; it is not re-checked here.
    """

    vtree: Vtree
    gates: tuple[Gate, ...]
    outputs: Mapping[str, int] = field(default_factory=dict)
    deterministic: bool = False

    def __len__(self) -> int:
        return len(self.gates)

    @cached_property
    def labeling(self) -> tuple[tuple[int, ...], ...]:
        """Gate ids homed at every vtree node."""
        homes: list[list[int]] = [[] for _ in range(len(self.vtree))]
        for gate_id, gate in enumerate(self.gates):
            homes[gate.home].append(gate_id)

        return tuple(tuple(ids) for ids in homes)

    def or_gates_at(self, node: int) -> tuple[int, ...]:
        return tuple(
            gate_id
            for gate_id in self.labeling[node]
            if self.gates[gate_id].kind is GateKind.OR
        )

    @property
    def width(self) -> int:
        return max(len(self.or_gates_at(node)) for node in range(len(self.vtree)))

    @property
    def variables(self) -> tuple[int, ...]:
        return self.vtree.variables

    def output(self, name: str) -> int:
        try:
            return self.outputs[name]
        except KeyError:
            raise MissingOutput(
                f"no output named {name!r}, available: {sorted(self.outputs)}"
            ) from None

    def select(self, names: Iterable[str] | str) -> "StructuredCircuit":
        if isinstance(names, str):
            names = [names]
        outputs = {name: self.output(name) for name in names}

        return collect_garbage(self.vtree, self.gates, outputs, self.deterministic)

    def rename(self, mapping: Mapping[str, str]) -> "StructuredCircuit":
        outputs = {mapping.get(name, name): gate for name, gate in self.outputs.items()}

        return StructuredCircuit(self.vtree, self.gates, outputs, self.deterministic)

    def with_vtree(self, vtree: Vtree, renumber: list[int]) -> "StructuredCircuit":
        gates = tuple(
            Gate(gate.kind, renumber[gate.home], gate.inputs, gate.literal)
            for gate in self.gates
        )

        return StructuredCircuit(vtree, gates, dict(self.outputs), self.deterministic)


def collect_garbage(
    vtree: Vtree,
    gates: Iterable[Gate],
    outputs: Mapping[str, int],
    deterministic: bool,
    canon: list[int] | None = None,
) -> StructuredCircuit:
    """Keep the gates reachable from ``outputs``, renumbered in their original order.

    ``canon`` maps every gate to the gate that replaces it.
    """
    gates = list(gates)
    resolve = canon.__getitem__ if canon else (lambda gate_id: gate_id)

    alive = [False] * len(gates)
    stack = [resolve(gate_id) for gate_id in outputs.values()]
    while stack:
        gate_id = stack.pop()
        if alive[gate_id]:
            continue
        alive[gate_id] = True
        stack.extend(resolve(kid) for kid in gates[gate_id].inputs)

    renumber: dict[int, int] = {}
    kept: list[Gate] = []
    for gate_id, gate in enumerate(gates):
        if not alive[gate_id]:
            continue
        inputs = tuple(renumber[resolve(kid)] for kid in gate.inputs)
        if gate.kind is GateKind.OR:
            inputs = tuple(dict.fromkeys(inputs))
        renumber[gate_id] = len(kept)
        kept.append(Gate(gate.kind, gate.home, inputs, gate.literal))

    return StructuredCircuit(
        vtree,
        tuple(kept),
        {name: renumber[resolve(gate_id)] for name, gate_id in outputs.items()},
        deterministic,
    )


class CircuitBuilder:
    """Append-only gate store over a fixed vtree.

    Inputs are shared: asking twice for the same literal or constant at the
    same node returns the same gate.
    """

    def __init__(self, vtree: Vtree):
        self.vtree = vtree
        self.gates: list[Gate] = []
        self.outputs: dict[str, int] = {}
        self._inputs: dict[tuple, int] = {}

    def __len__(self) -> int:
        return len(self.gates)

    def _append(self, gate: Gate) -> int:
        self.gates.append(gate)

        return len(self.gates) - 1

    def literal(self, literal: int, home: int | None = None) -> int:
        if home is None:
            home = self.vtree.leaf_of[abs(literal)]
        key = (GateKind.LITERAL, literal, home)
        if key not in self._inputs:
            self._inputs[key] = self._append(Gate(GateKind.LITERAL, home, literal=literal))

        return self._inputs[key]

    def constant(self, value: bool, home: int) -> int:
        kind = GateKind.TRUE if value else GateKind.FALSE
        key = (kind, home)
        if key not in self._inputs:
            self._inputs[key] = self._append(Gate(kind, home))

        return self._inputs[key]

    def conjunction(self, left: int, right: int, home: int) -> int:
        return self._append(Gate(GateKind.AND, home, (left, right)))

    def disjunction(self, inputs: Iterable[int], home: int) -> int:
        return self._append(Gate(GateKind.OR, home, tuple(dict.fromkeys(inputs))))

    def home(self, gate_id: int) -> int:
        return self.gates[gate_id].home

    def build(self, deterministic: bool, collect: bool = True) -> StructuredCircuit:
        if collect:
            return collect_garbage(self.vtree, self.gates, self.outputs, deterministic)

        return StructuredCircuit(
            self.vtree, tuple(self.gates), dict(self.outputs), deterministic
        )
