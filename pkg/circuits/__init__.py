from .models import (
    Vtree,
    VtreeBuilder,
    Gate,
    GateKind,
    StructuredCircuit,
    CircuitBuilder,
    collect_garbage,
)
from .evaluation import evaluate, truth_table, gate_tables, count_models
from .checks import check_structuredness, check_determinism_bruteforce, audited_deterministic
from .rewriting import remove_constant_leaves, condition, dedup_and_gates
from .formats import (
    format_vtree,
    parse_vtree,
    format_circuit,
    parse_circuit,
    save_circuit,
    load_circuit,
)
