import logging
import time

import networkx

from circuits.models import CircuitBuilder, StructuredCircuit, VtreeBuilder
from circuits.rewriting import remove_constant_leaves
from decompositions.heuristics import min_fill_decomposition
from decompositions.models import NiceTreeDecomposition, NodeKind
from decompositions.nice import make_nice
from decompositions.validation import validate
from formulas.graphs import primal_graph
from formulas.models import CnfFormula
from utils.conf import engine_setting
from utils.exceptions import BoundViolation, BudgetExceeded, InvalidDecomposition

from .clauses import assign_clauses

logger = logging.getLogger(__name__)


def _drop_bit(tau: int, position: int) -> int:
    low = tau & ((1 << position) - 1)

    return low | ((tau >> (position + 1)) << position)


def _insert_bit(tau: int, position: int) -> int:
    """Child assignment with a 0 at ``position``."""
    low = tau & ((1 << position) - 1)

    return low | ((tau >> position) << (position + 1))


def _clause_masks(formula: CnfFormula, clause_ids, bag: list[int]) -> list[tuple[int, int]]:
    position = {variable: bit for bit, variable in enumerate(bag)}
    masks = []
    for clause_id in clause_ids:
        positive = negative = 0
        for literal in formula.clauses[clause_id].literals:
            bit = 1 << position[literal.variable]
            if literal.positive:
                positive |= bit
            else:
                negative |= bit
        masks.append((positive, negative))

    return masks


class _Compiler:
    """Bottom-up pass keeping, per open node, the array of gates indexed by bag assignments.

    ``None`` stands for a branch that is false under that assignment.
    """

    def __init__(self, formula: CnfFormula, decomposition: NiceTreeDecomposition, max_gates: int):
        self.formula = formula
        self.decomposition = decomposition
        self.max_gates = max_gates
        self.assignment = assign_clauses(formula, decomposition)
        self.tree = VtreeBuilder()
        self.gates: CircuitBuilder | None = None

    def run(self) -> StructuredCircuit:
        # the whole vtree is laid out before the first gate
        vnode: dict[int, int] = {}
        for node in self.decomposition.postorder:
            kind = self.decomposition.kinds[node]
            kids = self.decomposition.children[node]
            if kind is NodeKind.LEAF:
                vnode[node] = self.tree.leaf()
            elif kind is NodeKind.INTRODUCE:
                vnode[node] = self.tree.internal(vnode[kids[0]], self.tree.leaf())
            elif kind is NodeKind.FORGET:
                variable = self.decomposition.variables[node]
                vnode[node] = self.tree.internal(vnode[kids[0]], self.tree.leaf(variable))
            else:
                vnode[node] = self.tree.internal(vnode[kids[0]], vnode[kids[1]])

        vtree = self.tree.build()
        self.gates = CircuitBuilder(vtree)
        arrays: dict[int, list[int | None]] = {}

        for node in self.decomposition.postorder:
            arrays[node] = self.filter_clauses(node, self.build_node(node, vnode, arrays))
            for kid in self.decomposition.children[node]:
                del arrays[kid]
            if len(self.gates) > self.max_gates:
                raise BudgetExceeded("compile", f"{len(self.gates)} gates exceed {self.max_gates}")

        root = self.decomposition.root
        top = arrays[root][0]
        if top is None:
            home = vnode[root]
            top = (
                self.gates.constant(False, home)
                if vtree.is_leaf(home)
                else self.gates.disjunction((), home)
            )
        self.gates.outputs["main"] = top

        return self.gates.build(deterministic=True)

    def build_node(self, node: int, vnode: dict, arrays: dict) -> list[int | None]:
        decomposition, gates = self.decomposition, self.gates
        kind = decomposition.kinds[node]
        home = vnode[node]
        bag = sorted(decomposition.bags[node])
        kids = decomposition.children[node]

        if kind is NodeKind.LEAF:
            return [gates.constant(True, home)]

        below = arrays[kids[0]]
        if kind is NodeKind.INTRODUCE:
            position = bag.index(decomposition.variables[node])
            filler = gates.constant(True, gates.vtree.right(home))
            gadgets: dict[int, int] = {}
            array = []
            for tau in range(2 ** len(bag)):
                inner = below[_drop_bit(tau, position)]
                if inner is None:
                    array.append(None)
                    continue
                if inner not in gadgets:
                    gadgets[inner] = gates.disjunction(
                        (gates.conjunction(inner, filler, home),), home
                    )
                array.append(gadgets[inner])
            return array

        if kind is NodeKind.FORGET:
            variable = decomposition.variables[node]
            child_bag = sorted(decomposition.bags[kids[0]])
            position = child_bag.index(variable)
            positive, negative = gates.literal(variable), gates.literal(-variable)
            array = []
            for tau in range(2 ** len(bag)):
                low = _insert_bit(tau, position)
                branches = [
                    gates.conjunction(below[extended], literal, home)
                    for extended, literal in ((low | 1 << position, positive), (low, negative))
                    if below[extended] is not None
                ]
                array.append(gates.disjunction(branches, home) if branches else None)
            return array

        other = arrays[kids[1]]
        return [
            None
            if left is None or right is None
            else gates.disjunction((gates.conjunction(left, right, home),), home)
            for left, right in zip(below, other)
        ]

    def filter_clauses(self, node: int, array: list[int | None]) -> list[int | None]:
        clause_ids = self.assignment.at(node)
        if not clause_ids:
            return array

        bag = sorted(self.decomposition.bags[node])
        masks = _clause_masks(self.formula, clause_ids, bag)
        for tau, gate in enumerate(array):
            if gate is None:
                continue
            if any(tau & positive == 0 and tau & negative == negative for positive, negative in masks):
                array[tau] = None

        return array


def compile_formula(
    formula: CnfFormula,
    decomposition: NiceTreeDecomposition,
    max_gates: int | None = None,
    max_width: int | None = None,
) -> StructuredCircuit:
    """Complete structured d-DNNF of ``formula`` with one output, ``main``.

    Its vtree follows the decomposition: forget nodes hang a leaf for the
    forgotten variable, introduce and leaf nodes an unlabeled leaf that is
    contracted away at the end. Width stays within 2 ** (width + 1) of the
    decomposition.
    """
    verdict = validate(decomposition, primal_graph(formula))
    if not verdict:
        raise InvalidDecomposition(verdict.reason)
    if not isinstance(decomposition, NiceTreeDecomposition):
        raise InvalidDecomposition("compilation needs a nice tree decomposition")

    started = time.perf_counter()
    compiler = _Compiler(formula, decomposition, max_gates or engine_setting("MAX_GATES"))
    circuit = remove_constant_leaves(compiler.run())

    bound = 2**decomposition.max_bag
    if circuit.width > bound:
        raise BoundViolation(f"compiled width {circuit.width} exceeds 2^{decomposition.max_bag}")
    if max_width is not None and circuit.width > max_width:
        raise BudgetExceeded("compile", f"width {circuit.width} exceeds the ceiling {max_width}")

    logger.info(
        "compiled %d clauses over %d variables: width %d, %d gates, maxbag %d in %.1f ms",
        len(formula.clauses),
        formula.num_vars,
        circuit.width,
        len(circuit),
        decomposition.max_bag,
        (time.perf_counter() - started) * 1000,
    )

    return circuit


def decompose(formula: CnfFormula, exact: bool | None = None) -> NiceTreeDecomposition:
    graph: networkx.Graph = primal_graph(formula)

    return make_nice(min_fill_decomposition(graph, exact=exact))


def compile_cnf(
    formula: CnfFormula, exact: bool | None = None, max_gates: int | None = None
) -> tuple[StructuredCircuit, NiceTreeDecomposition]:
    decomposition = decompose(formula, exact=exact)

    return compile_formula(formula, decomposition, max_gates=max_gates), decomposition
