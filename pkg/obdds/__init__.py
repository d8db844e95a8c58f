from .models import Obdd, FALSE_SINK, TRUE_SINK
from .builders import (
    obdd_from_cnf_bruteforce,
    complete_obdd,
    obdd_negate,
    obdd_count_models,
    obdd_reduce,
)
from .projection import SubsetProjection, obdd_project, obdd_project_dual
from .conversion import obdd_to_circuit
