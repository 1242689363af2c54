import math

import pytest

from sswalk.model import CoinProfile, WalkSpec, make_shift, make_site

SQ3_2 = math.sqrt(3) / 2


@pytest.fixture
def plus_one_spec():
    """Step walk with p = 0.5, a(-inf) = 0.9, a(+inf) = 0; index +1."""
    return WalkSpec(make_shift(0.5, SQ3_2), CoinProfile.step(make_site(0.9), make_site(0.0)))


@pytest.fixture
def minus_one_spec():
    return WalkSpec(make_shift(-0.5, SQ3_2), CoinProfile.step(make_site(0.9), make_site(0.0)))


@pytest.fixture
def homogeneous_spec():
    return WalkSpec(make_shift(0.3, math.sqrt(0.91)), CoinProfile.constant(make_site(0.6, phase=0.4)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
