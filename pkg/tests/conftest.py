import numpy as np
import pytest

from boundary_forge.force import Polynomial


def random_polynomial(rng: np.random.Generator, lowest: int | None = None) -> tuple[Polynomial, int]:
    """Degree <= 5 polynomial with coefficients in [-1e3, 1e3].

    Powers below ``lowest`` are zero and the ``lowest`` coefficient has
    magnitude >= 1, so the local behaviour of S near 0 is that of X**(lowest+1).
    """
    if lowest is None:
        lowest = int(rng.integers(0, 6))
    degree = int(rng.integers(lowest, 6))
    coeffs = np.zeros(degree + 1)
    coeffs[lowest:] = rng.uniform(-1e3, 1e3, degree + 1 - lowest)
    coeffs[lowest] = rng.choice([-1.0, 1.0]) * rng.uniform(1.0, 1e3)
    return Polynomial(coeffs), lowest


def random_family(rng: np.random.Generator):
    L = float(rng.uniform(0.05, 0.2))
    k_mag = float(rng.uniform(50.0, 500.0))
    delta_mag = float(rng.uniform(0.1, 0.8)) * L
    return k_mag, delta_mag, L


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
