from .towers import exp_tower
from .solver import SolveResult, SolveStats, solve, solve_via_obdd
