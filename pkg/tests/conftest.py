#!/usr/bin/env python3
"""
Shared fixtures and the pytest hooks of the sdprover suite.

The randomized property suites draw their sample counts through
``property_samples``; SDPROVER_PROPERTY_SCALE=0.1 runs them ten times smaller,
SDPROVER_PROPERTY_SCALE=2 twice as large.

Usage:
    pytest tests
    SDPROVER_PROPERTY_SCALE=0.2 pytest tests -m property
"""
import os
from pathlib import Path

import pytest

from sdprover.parser import load_problem

PROBLEMS_DIR = Path(__file__).resolve().parent.parent / "problems"

_scale = 1.0


def pytest_configure(config):
    """
    Read the property scale and register the property marker.
    """
    global _scale
    try:
        _scale = float(os.getenv("SDPROVER_PROPERTY_SCALE", "1.0"))
    except ValueError:
        raise pytest.UsageError("SDPROVER_PROPERTY_SCALE must be a number")
    config.addinivalue_line(
        "markers", "property: randomized property suites (sample counts scale with SDPROVER_PROPERTY_SCALE)")


def pytest_report_header(config):
    return f"sdprover property scale: {_scale}"


def property_samples(count):
    """Number of random instances for a suite written for count instances at scale 1."""
    return max(1, int(count * _scale))


def problem(name):
    return load_problem((PROBLEMS_DIR / f"{name}.hrs").read_text())


@pytest.fixture(scope="session")
def problems_dir():
    return PROBLEMS_DIR


@pytest.fixture(scope="session")
def foldl():
    return problem("foldl")


@pytest.fixture(scope="session")
def sum_len():
    return problem("sum_len")


@pytest.fixture(scope="session")
def ave():
    return problem("ave")


@pytest.fixture(scope="session")
def heap():
    return problem("heap")


@pytest.fixture(scope="session")
def diff():
    return problem("diff")


@pytest.fixture(scope="session")
def forall():
    return problem("forall")


@pytest.fixture(scope="session")
def map_problem():
    return problem("map")


@pytest.fixture(scope="session")
def split():
    return problem("split")


@pytest.fixture(scope="session")
def weak_loop():
    return problem("weak_loop")
