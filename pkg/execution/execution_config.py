# execution/execution_config.py

"""
CLI and sweep configuration.
These values are editable directly
without changing logic elsewhere.
"""

PROJECT_NAME = "clockrg"
VERSION = "0.1.0"

# -------- EXIT CODES --------
EXIT_OK = 0
EXIT_CONFIG = 2       # config / usage / domain errors
EXIT_NUMERIC = 3      # numerical failures
EXIT_SWEEP = 4        # one or more sweep points failed

# error family (core.errors) -> exit code
EXIT_CODES = {
    "config": EXIT_CONFIG,
    "numeric": EXIT_NUMERIC,
    "sweep": EXIT_SWEEP,
}

# -------- OUTPUT --------
DEFAULT_OUTPUT_DIR = "output"
# the only environment variable read by the CLI
OUTPUT_DIR_ENV = "CLOCKRG_OUTPUT_DIR"
MANIFEST_FILE = "manifest.json"
ERROR_FILE = "error.json"

# -------- SWEEPS --------
DEFAULT_WORKERS = 1
MAX_SWEEP_POINTS = 1_000_000
# more than this fraction of failed points -> SweepError
SWEEP_FAILURE_FRACTION = 0.5

