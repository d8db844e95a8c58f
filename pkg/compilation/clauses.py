from dataclasses import dataclass, field

from decompositions.models import NiceTreeDecomposition, NodeKind
from formulas.models import CnfFormula
from utils.exceptions import InvalidDecomposition


class _Cell:
    """One occurrence of a variable in a clause, linked into the variable's list."""

    __slots__ = ("clause", "variable", "prev", "next")

    def __init__(self, clause: int, variable: int):
        self.clause = clause
        self.variable = variable
        self.prev: _Cell | None = None
        self.next: _Cell | None = None


class ClauseIndex:
    """Occurrence lists per variable, with per-clause back-links.

    Removing a clause unlinks each of its cells, so it costs one step per
    literal. Tautological clauses are never indexed.
    """

    def __init__(self, formula: CnfFormula):
        self.heads: dict[int, _Cell] = {}
        self.cells: dict[int, list[_Cell]] = {}

        for clause_id, clause in enumerate(formula.clauses):
            if clause.tautological or not clause.literals:
                continue
            cells = []
            for literal in clause.literals:
                cell = _Cell(clause_id, literal.variable)
                head = self.heads.get(literal.variable)
                if head is not None:
                    head.prev = cell
                    cell.next = head
                self.heads[literal.variable] = cell
                cells.append(cell)
            self.cells[clause_id] = cells

    def __len__(self) -> int:
        return len(self.cells)

    def remaining(self) -> list[int]:
        return sorted(self.cells)

    def occurrences(self, variable: int) -> list[int]:
        found, cell = [], self.heads.get(variable)
        while cell is not None:
            found.append(cell.clause)
            cell = cell.next

        return sorted(found)

    def remove_clause(self, clause_id: int) -> None:
        for cell in self.cells.pop(clause_id):
            if cell.prev is not None:
                cell.prev.next = cell.next
            elif cell.next is not None:
                self.heads[cell.variable] = cell.next
            else:
                del self.heads[cell.variable]
            if cell.next is not None:
                cell.next.prev = cell.prev

    def pop_variable(self, variable: int) -> list[int]:
        clause_ids = self.occurrences(variable)
        for clause_id in clause_ids:
            self.remove_clause(clause_id)

        return clause_ids


def build_clause_index(formula: CnfFormula) -> ClauseIndex:
    return ClauseIndex(formula)


@dataclass(frozen=True)
class ClauseAssignment:
    buckets: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def at(self, node: int) -> tuple[int, ...]:
        return self.buckets.get(node, ())

    @property
    def home(self) -> dict[int, int]:
        return {
            clause_id: node
            for node, clause_ids in self.buckets.items()
            for clause_id in clause_ids
        }


def assign_clauses(
    formula: CnfFormula, decomposition: NiceTreeDecomposition
) -> ClauseAssignment:
    """Bucket every clause at the child of the first forget node, bottom-up, that drops one of its variables."""
    index = build_clause_index(formula)
    buckets: dict[int, tuple[int, ...]] = {}

    for node in decomposition.postorder:
        if decomposition.kinds[node] is not NodeKind.FORGET:
            continue
        popped = index.pop_variable(decomposition.variables[node])
        if popped:
            (child,) = decomposition.children[node]
            buckets[child] = buckets.get(child, ()) + tuple(popped)

    empty = tuple(i for i, clause in enumerate(formula.clauses) if not clause.literals)
    if empty:
        buckets[decomposition.root] = buckets.get(decomposition.root, ()) + empty

    if len(index):
        raise InvalidDecomposition(
            f"{len(index)} clauses were never assigned, the decomposition misses their variables"
        )

    return ClauseAssignment(buckets)
