"""
Django settings for the SymBreak project.

SymBreak has no database and no web surface: Django provides settings,
management commands (the CLI), templates (DOT output), forms (CLI option
validation) and the test runner.
"""

from pathlib import Path

from decouple import config

# ---------------------------
# Paths
# ---------------------------
BASE_DIR = Path(__file__).resolve().parent.parent

# ---------------------------
# Core / Debug
# ---------------------------
# From .env (all optional):
# SECRET_KEY=...
# DEBUG=True/False
# LOG_LEVEL=WARNING
SECRET_KEY = config("SECRET_KEY", default="symbreak-dev-only-not-secret")
DEBUG = config("DEBUG", default="False").lower() in ("true", "1", "yes")
ALLOWED_HOSTS: list[str] = []

# ---------------------------
# Installed Apps
# ---------------------------
INSTALLED_APPS = [
    # Local apps
    "cnf",
    "encoding",
    "automorphism",
    "sbp",
    "solver",
    "pipeline",
]

# ---------------------------
# Templates
# ---------------------------
TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {"context_processors": []},
    },
]

# ---------------------------
# Database
# ---------------------------
# Batch transforms only; nothing is persisted.
DATABASES: dict = {}

# ---------------------------
# I18N / TZ
# ---------------------------
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

# ---------------------------
# Oracle guards / search budget
# ---------------------------
# Exhaustive oracles are exponential; these keep them at desk scale.
SYMBREAK_TRUTH_TABLE_MAX_VARS = int(config("SYMBREAK_TRUTH_TABLE_MAX_VARS", default="20"))
SYMBREAK_BRUTE_FORCE_MAX_VARS = int(config("SYMBREAK_BRUTE_FORCE_MAX_VARS", default="6"))
SYMBREAK_SIMPLIFY_MAX_VARS = int(config("SYMBREAK_SIMPLIFY_MAX_VARS", default="16"))

# Individualization-refinement stops after this many leaves.
SYMBREAK_MAX_SEARCH_LEAVES = int(config("SYMBREAK_MAX_SEARCH_LEAVES", default="50000"))

# Largest group closure enumerated when dropping redundant generators.
SYMBREAK_MAX_CLOSURE_SIZE = int(config("SYMBREAK_MAX_CLOSURE_SIZE", default="5000"))

# ---------------------------
# CLI defaults
# ---------------------------
SYMBREAK_DEFAULT_METHOD = config("SYMBREAK_DEFAULT_METHOD", default="lex")

# ---------------------------
# Logging
# ---------------------------
# Console handler writes to stderr so command output on stdout stays clean.
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "plain"},
    },
    "loggers": {
        "django": {"handlers": ["console"], "level": "INFO", "propagate": False},
    },
    "root": {
        "handlers": ["console"],
        "level": "DEBUG" if DEBUG else config("LOG_LEVEL", default="WARNING"),
    },
}
