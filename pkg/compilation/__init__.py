from .clauses import ClauseIndex, ClauseAssignment, build_clause_index, assign_clauses
from .compiler import compile_formula, compile_cnf, decompose
