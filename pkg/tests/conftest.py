import numpy as np
import pytest

from trumpkit import ProbVector

TRIPLE_X = [0.4, 0.4, 0.2]
TRIPLE_Y = [0.5, 0.25, 0.25]
QUAD_X = [0.4, 0.4, 0.1, 0.1]
QUAD_Y = [0.5, 0.25, 0.25, 0]


@pytest.fixture
def triple():
    return ProbVector.of(TRIPLE_X), ProbVector.of(TRIPLE_Y)


@pytest.fixture
def triple_exact():
    return ProbVector.of(TRIPLE_X, "exact"), ProbVector.of(TRIPLE_Y, "exact")


@pytest.fixture
def quad():
    return ProbVector.of(QUAD_X), ProbVector.of(QUAD_Y)


@pytest.fixture
def quad_exact():
    return ProbVector.of(QUAD_X, "exact"), ProbVector.of(QUAD_Y, "exact")


def random_rational(rng, d, denom=12):
    """A random exact probability vector with small denominators."""
    w = rng.integers(0, denom, size=d) + 1
    w[rng.random(d) < 0.15] = 0
    if w.sum() == 0:
        w[0] = 1
    from fractions import Fraction
    total = int(w.sum())
    return ProbVector.of([Fraction(int(v), total) for v in w], "exact")


def random_float(rng, d, alpha=1.0):
    return ProbVector.of(rng.dirichlet(np.ones(d) * alpha))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n][1])
