import math

import numpy as np
import pytest

from complexgames import _pykernels, kernels
from complexgames.game import ComplexGame

A_FULL = np.array([[2, 1 + 1j, 5 + 2j], [3 + 1j, 3, 4 - 1j]])
A_RED = np.array([[2, 1 + 1j], [3 + 1j, 3]])
ALPHA = math.pi / 4
BETA = 5 * math.pi / 12

BACKENDS = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES = {}


@pytest.fixture
def full_game():
    return ComplexGame(A_FULL, ALPHA, BETA)


@pytest.fixture
def reduced_game():
    return ComplexGame(A_RED, ALPHA, BETA)


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run a test once per available kernel backend."""
    if request.param == "python":
        for name in ("simplex_loop", "complex_echelon", "payoff_table", "pivot"):
            monkeypatch.setattr(kernels, name, getattr(_pykernels, name))
    return request.param


def random_game(rng, max_m=3, max_n=3, bound=5.0, args=(math.pi / 6, math.pi / 4, math.pi / 3)):
    m = int(rng.integers(1, max_m + 1))
    n = int(rng.integers(1, max_n + 1))
    A = rng.uniform(-bound, bound, (m, n)) + 1j * rng.uniform(-bound, bound, (m, n))
    return ComplexGame(A, args[rng.integers(len(args))], args[rng.integers(len(args))])


def random_skew_game(rng, size, a0):
    B = rng.uniform(-3, 3, (size, size)) + 1j * rng.uniform(-3, 3, (size, size))
    return ComplexGame(B - B.conj().T, a0, a0)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
