"""Shared fixtures; RTA_SEED fixes the randomness of every test (default 20240601)."""

from __future__ import annotations

import os
import random

import pytest
from hypothesis import HealthCheck, settings

from helpers import SEED

settings.register_profile(
    "rta",
    derandomize="RTA_SEED" not in os.environ,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("rta")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


def pytest_report_header(config):
    return f"rta seed: {SEED}"
