from .models import TreeDecomposition, NiceTreeDecomposition, NodeKind
from .heuristics import (
    min_fill_decomposition,
    exact_decomposition,
    decomposition_from_order,
    min_fill_order,
)
from .nice import make_nice, forget_order
from .validation import validate, check_tree
from .formats import format_td
