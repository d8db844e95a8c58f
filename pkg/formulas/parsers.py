import logging
from typing import Iterator

from utils.exceptions import ParseError

from .models import Clause, CnfFormula, QbfFormula, Quantifier

logger = logging.getLogger(__name__)

QUANTIFIER_TOKENS = {"e": Quantifier.EXISTS, "a": Quantifier.FORALL}


def data_lines(text: bytes | str) -> Iterator[tuple[int, str]]:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")

    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line and not line.startswith("c") and not line.startswith("%"):
            yield number, line


def read_int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line) from None


def _parse(text: bytes | str, allow_prefix: bool):
    num_vars = declared_clauses = None
    clauses: list[Clause] = []
    blocks: list[tuple[Quantifier, list[int]]] = []
    quantified: set[int] = set()
    pending: list[int] = []
    pending_line = 0

    for number, line in data_lines(text):
        tokens = line.split()

        if tokens[0] == "p":
            if num_vars is not None:
                raise ParseError("duplicate problem line", number)
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise ParseError("malformed header, expected 'p cnf <vars> <clauses>'", number)
            num_vars = read_int(tokens[2], number)
            declared_clauses = read_int(tokens[3], number)
            if num_vars < 0 or declared_clauses < 0:
                raise ParseError("negative counts in header", number)
            continue

        if num_vars is None:
            raise ParseError("data before the problem line", number)

        if tokens[0] in QUANTIFIER_TOKENS:
            if not allow_prefix:
                raise ParseError(f"unexpected quantifier line {tokens[0]!r}", number)
            if clauses or pending:
                raise ParseError("quantifier line after the first clause", number)
            if tokens[-1] != "0":
                raise ParseError("quantifier line is not terminated by 0", number)
            variables = [read_int(token, number) for token in tokens[1:-1]]
            if not variables:
                raise ParseError("empty quantifier block", number)
            for variable in variables:
                if variable < 1 or variable > num_vars:
                    raise ParseError(f"variable {variable} out of range", number)
                if variable in quantified:
                    raise ParseError(f"variable {variable} quantified twice", number)
                quantified.add(variable)
            blocks.append((QUANTIFIER_TOKENS[tokens[0]], variables))
            continue

        for token in tokens:
            literal = read_int(token, number)
            if literal == 0:
                clauses.append(Clause.from_ints(pending))
                pending = []
                continue
            if abs(literal) > num_vars:
                raise ParseError(f"literal {literal} out of range", number)
            pending.append(literal)
            pending_line = number

    if num_vars is None:
        raise ParseError("missing problem line")
    if pending:
        raise ParseError("last clause is not terminated by 0", pending_line)
    if declared_clauses != len(clauses):
        logger.warning(
            "header declares %d clauses, found %d", declared_clauses, len(clauses)
        )

    return CnfFormula(num_vars, tuple(clauses)), blocks


def parse_dimacs(text: bytes | str) -> CnfFormula:
    formula, _ = _parse(text, allow_prefix=False)

    return formula


def parse_qdimacs(text: bytes | str) -> QbfFormula:
    matrix, blocks = _parse(text, allow_prefix=True)

    return QbfFormula.build(blocks, matrix)


def format_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    lines += [" ".join(map(str, (*clause.to_ints(), 0))) for clause in formula.clauses]

    return "\n".join(lines) + "\n"


def format_qdimacs(qbf: QbfFormula) -> str:
    matrix = qbf.matrix
    lines = [f"p cnf {matrix.num_vars} {len(matrix.clauses)}"]
    for block in qbf.prefix:
        variables = " ".join(str(v) for v in sorted(block.variables))
        lines.append(f"{block.quantifier.value} {variables} 0")
    lines += [" ".join(map(str, (*clause.to_ints(), 0))) for clause in matrix.clauses]

    return "\n".join(lines) + "\n"
