from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping


@dataclass(frozen=True, slots=True)
class Literal:
    variable: int
    positive: bool = True

    def __post_init__(self):
        if self.variable < 1:
            raise ValueError(f"variable ids start at 1, got {self.variable}")

    @classmethod
    def from_int(cls, value: int) -> "Literal":
        return cls(abs(value), value > 0)

    def __int__(self) -> int:
        return self.variable if self.positive else -self.variable

    def __neg__(self) -> "Literal":
        return Literal(self.variable, not self.positive)

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return assignment[self.variable] == self.positive


@dataclass(frozen=True, slots=True)
class Clause:
    """A disjunction of literals.

    Repeated literals are collapsed by ``from_ints``. A clause holding both
    ``x`` and ``-x`` is kept, flagged ``tautological`` and never falsified.
    """

    literals: tuple[Literal, ...]
    tautological: bool = False

    @classmethod
    def from_ints(cls, values: Iterable[int]) -> "Clause":
        unique = tuple(dict.fromkeys(int(value) for value in values))
        tautological = any(-value in unique for value in unique)

        return cls(tuple(Literal.from_int(value) for value in unique), tautological)

    def __len__(self) -> int:
        return len(self.literals)

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(literal.variable for literal in self.literals)

    def to_ints(self) -> tuple[int, ...]:
        return tuple(int(literal) for literal in self.literals)

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        if self.tautological:
            return True

        return any(literal.satisfied_by(assignment) for literal in self.literals)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        for clause in self.clauses:
            for literal in clause.literals:
                if literal.variable > self.num_vars:
                    raise ValueError(
                        f"variable {literal.variable} exceeds num_vars={self.num_vars}"
                    )

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> "CnfFormula":
        return cls(num_vars, tuple(Clause.from_ints(clause) for clause in clauses))

    @property
    def size(self) -> int:
        return sum(len(clause) for clause in self.clauses)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(range(1, self.num_vars + 1))

    def evaluate(self, assignment: Mapping[int, bool]) -> bool:
        return all(clause.satisfied_by(assignment) for clause in self.clauses)


class Quantifier(str, Enum):
    EXISTS = "e"
    FORALL = "a"

    @property
    def dual(self) -> "Quantifier":
        return Quantifier.FORALL if self is Quantifier.EXISTS else Quantifier.EXISTS


@dataclass(frozen=True)
class QuantifierBlock:
    quantifier: Quantifier
    variables: frozenset[int]


@dataclass(frozen=True)
class QbfFormula:
    prefix: tuple[QuantifierBlock, ...]
    matrix: CnfFormula = field(default_factory=lambda: CnfFormula(0))

    def __post_init__(self):
        seen: set[int] = set()
        for index, block in enumerate(self.prefix):
            if not block.variables:
                raise ValueError(f"quantifier block {index} is empty")
            if seen & block.variables:
                raise ValueError(f"block {index} quantifies a variable twice")
            if any(v < 1 or v > self.matrix.num_vars for v in block.variables):
                raise ValueError(f"block {index} quantifies an undeclared variable")
            if index and self.prefix[index - 1].quantifier is block.quantifier:
                raise ValueError(f"blocks {index - 1} and {index} do not alternate")
            seen |= block.variables

    @classmethod
    def build(
        cls,
        blocks: Iterable[tuple[Quantifier | str, Iterable[int]]],
        matrix: CnfFormula,
    ) -> "QbfFormula":
        """Merge consecutive blocks of the same quantifier, then validate."""
        merged: list[QuantifierBlock] = []
        for quantifier, variables in blocks:
            quantifier = Quantifier(quantifier)
            variables = frozenset(variables)
            if merged and merged[-1].quantifier is quantifier:
                variables = merged.pop().variables | variables
            merged.append(QuantifierBlock(quantifier, variables))

        return cls(tuple(merged), matrix)

    @property
    def alternations(self) -> int:
        return len(self.prefix)

    @cached_property
    def quantified_variables(self) -> frozenset[int]:
        return frozenset().union(*(block.variables for block in self.prefix))

    @cached_property
    def free_variables(self) -> tuple[int, ...]:
        quantified = self.quantified_variables

        return tuple(v for v in self.matrix.variables if v not in quantified)
