"""Seeded instance families shared by the test suites."""
import random

from formulas.models import CnfFormula, QbfFormula, Quantifier


def random_cnf(
    rng: random.Random, num_vars: int, num_clauses: int, width: int = 3
) -> CnfFormula:
    clauses = []
    for _ in range(num_clauses):
        size = rng.randint(1, min(width, num_vars))
        variables = rng.sample(range(1, num_vars + 1), size)
        clauses.append([v if rng.random() < 0.5 else -v for v in variables])

    return CnfFormula.from_ints(num_vars, clauses)


def chain_cnf(num_vars: int) -> CnfFormula:
    """(x1 or x2) and (x2 or x3) and ... along a path."""
    return CnfFormula.from_ints(num_vars, [[i, i + 1] for i in range(1, num_vars)])


def grid_cnf(rng: random.Random, rows: int, columns: int) -> CnfFormula:
    """Random-sign binary clauses on the edges of a grid."""

    def variable(row: int, column: int) -> int:
        return row * columns + column + 1

    clauses = []
    for row in range(rows):
        for column in range(columns):
            neighbours = []
            if column + 1 < columns:
                neighbours.append(variable(row, column + 1))
            if row + 1 < rows:
                neighbours.append(variable(row + 1, column))
            for other in neighbours:
                here = variable(row, column)
                clauses.append([here * rng.choice((1, -1)), other * rng.choice((1, -1))])

    return CnfFormula.from_ints(rows * columns, clauses)


def random_qbf(
    rng: random.Random,
    num_vars: int,
    num_clauses: int,
    blocks: int,
    free: bool = False,
) -> QbfFormula:
    """Alternating prefix of at most ``blocks`` blocks; ``free`` leaves some variables unquantified."""
    matrix = random_cnf(rng, num_vars, num_clauses)
    variables = list(range(1, num_vars + 1))
    rng.shuffle(variables)
    if free:
        variables = variables[: rng.randint(1, max(1, num_vars - 1))]

    blocks = max(1, min(blocks, len(variables)))
    cuts = sorted(rng.sample(range(1, len(variables)), blocks - 1)) if blocks > 1 else []
    parts = [variables[a:b] for a, b in zip([0, *cuts], [*cuts, len(variables)])]
    quantifier = rng.choice((Quantifier.EXISTS, Quantifier.FORALL))
    prefix = []
    for part in parts:
        prefix.append((quantifier, part))
        quantifier = quantifier.dual

    return QbfFormula.build(prefix, matrix)


def assignments(variables, index: int) -> dict[int, bool]:
    """Row ``index`` of a truth table over ``variables`` (bit i is variables[i])."""
    return {variable: bool(index >> bit & 1) for bit, variable in enumerate(variables)}
