"""
Django settings for the knowledge compiler project.

There is no HTTP surface and no database: the project is driven through
management commands (compile, project, count, qbf, verify) and its engine
settings live in ``KNOWLEDGE_COMPILER``.
"""

from pathlib import Path

import os
import dotenv

dotenv.load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


SECRET_KEY = os.getenv("SECRET_KEY", "knowledge-compiler-local")

DEBUG = os.getenv("DEBUG", "false").lower() == "true"

ALLOWED_HOSTS = []


# Application definition

THIRD_PARTY_APPS = [
    "rest_framework",
]

MY_APPS = [
    "formulas",
    "decompositions",
    "circuits",
    "compilation",
    "projection",
    "transformations",
    "obdds",
    "qbfs",
    "oracles",
]

INSTALLED_APPS = THIRD_PARTY_APPS + MY_APPS


# Database
# Every engine structure is in memory; tests are SimpleTestCase only.

DATABASES = {}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

REST_FRAMEWORK = {
    "COMPACT_JSON": True,
    "STRICT_JSON": True,
}


def _env_flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default

    return value.lower() in ("1", "true", "yes")


KNOWLEDGE_COMPILER = {
    "MAX_WIDTH": int(os.getenv("KC_MAX_WIDTH", 2**20)),
    "MAX_GATES": int(os.getenv("KC_MAX_GATES", 10**8)),
    "EXACT_TREEWIDTH": _env_flag("KC_EXACT_TREEWIDTH", False),
    "EXACT_TREEWIDTH_MAX_VERTICES": 20,
    "BRUTEFORCE_MAX_VARS": 20,
    "ORACLE_MAX_VARS": 24,
    "VERIFY_MAX_VARS": 16,
    "MAX_TOWER_BITS": 2**20,
}


LOG_LEVEL = os.getenv("KC_LOG_LEVEL", "WARNING").upper()

ENGINE_LOGGERS = [
    "formulas",
    "decompositions",
    "circuits",
    "compilation",
    "projection",
    "transformations",
    "obdds",
    "qbfs",
]

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        name: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for name in ENGINE_LOGGERS
    },
}
