from .bruteforce import (
    cnf_truth_table,
    cnf_model_count,
    qbf_eval,
    qbf_eval_flat,
    qbf_count,
    shape_oracle,
)
