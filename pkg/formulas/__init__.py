from .models import Literal, Clause, CnfFormula, Quantifier, QuantifierBlock, QbfFormula
from .parsers import parse_dimacs, parse_qdimacs, format_dimacs, format_qdimacs
from .graphs import primal_graph
