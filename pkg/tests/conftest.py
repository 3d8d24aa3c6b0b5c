import random
from fractions import Fraction
from pathlib import Path

import pytest

from troptensor import Tensor
from troptensor.core import canonical_keys

FIXTURES = Path(__file__).parent / "fixtures"


def three_cycle() -> Tensor:
    """Zero tensor except a_132 = a_213 = a_322 = -1 (0-based below)."""
    return Tensor.from_entries(3, 3, [((0, 2, 1), -1), ((1, 0, 2), -1), ((2, 1, 1), -1)])


def skew23() -> Tensor:
    vals = {(0, (0, 0)): 10, (0, (0, 1)): 9, (0, (1, 1)): 2,
            (1, (0, 0)): 7, (1, (0, 1)): 0, (1, (1, 1)): 10}
    return Tensor(2, 3, vals)


def random_rational(rng: random.Random, lo=-20, hi=20, maxden=6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, maxden))


def random_tensor(rng: random.Random, n: int, m: int) -> Tensor:
    return Tensor(n, m, {k: random_rational(rng) for k in canonical_keys(n, m)})


def random_symmetric(rng: random.Random, n: int, m: int) -> Tensor:
    cache = {}

    def value(i, t):
        key = tuple(sorted((i,) + t))
        if key not in cache:
            cache[key] = random_rational(rng)
        return cache[key]

    return Tensor.from_function(n, m, value)


@pytest.fixture
def tc33():
    return three_cycle()


@pytest.fixture
def sk23():
    return skew23()


@pytest.fixture
def zero23():
    return Tensor.constant(2, 3, 0)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
