from django.conf import settings

DEFAULTS = {
    "MAX_WIDTH": 2**20,
    "MAX_GATES": 10**8,
    "EXACT_TREEWIDTH": False,
    "EXACT_TREEWIDTH_MAX_VERTICES": 20,
    "BRUTEFORCE_MAX_VARS": 20,
    "ORACLE_MAX_VARS": 24,
    "VERIFY_MAX_VARS": 16,
    "MAX_TOWER_BITS": 2**20,
}


def engine_setting(name: str):
    configured = getattr(settings, "KNOWLEDGE_COMPILER", {})

    return configured.get(name, DEFAULTS[name])
