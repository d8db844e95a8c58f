from utils.conf import engine_setting
from utils.exceptions import BudgetExceeded


def exp_tower(levels: int, base: int, max_bits: int | None = None) -> int:
    """``base`` under ``levels`` nested powers of two."""
    if levels < 0 or base < 0:
        raise ValueError("levels and base must be non-negative")
    limit = max_bits or engine_setting("MAX_TOWER_BITS")

    value = base
    for _ in range(levels):
        if value > limit:
            raise BudgetExceeded("exp_tower", f"2^{value} needs more than {limit} bits")
        value = 2**value

    return value
