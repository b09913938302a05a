from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from strata_morse.config import load_environment

load_environment()

settings.register_profile(
    "strata_morse",
    max_examples=500,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("strata_morse")

PROBLEMS_DIR = Path(__file__).resolve().parent.parent / "problems"


@pytest.fixture
def problems_dir() -> Path:
    return PROBLEMS_DIR
