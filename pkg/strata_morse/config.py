import os

from dotenv import load_dotenv

# Environment-configurable settings
DEFAULT_SEED = 20240607
DEFAULT_LOG_LEVEL = "WARNING"

# Exact arithmetic
MAX_COEFFICIENT = 2**63 - 1

# Spectral engine
DEFAULT_MODE_CUTOFF = 3
DEFAULT_KEEP_EIGENVALUES = 20
NEGATIVE_EIGENVALUE_TOL = 1e-8
GAP_RATIO_TARGET = 10.0
AUTO_THRESHOLD_WINDOW = 20
ZERO_FLOOR = 1e-12
MIN_GRID_POINTS = 50


def load_environment() -> None:
    """Load a `.env` file from the working directory, if there is one."""
    load_dotenv()


def get_seed() -> int:
    """Seed for randomized property-test sampling (`STRATA_MORSE_SEED`)."""
    return int(os.getenv("STRATA_MORSE_SEED", str(DEFAULT_SEED)))


def get_log_level() -> str:
    """Default CLI log level name (`STRATA_MORSE_LOG_LEVEL`)."""
    return os.getenv("STRATA_MORSE_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
