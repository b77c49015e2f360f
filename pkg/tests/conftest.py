import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("QCC_HYPOTHESIS_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# lines recorded by the acceptance suite, echoed at the end of the run
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.rstrip("ab")), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


def random_state(rng: np.random.Generator, n: int = 2) -> np.ndarray:
    """Random full-rank density matrix."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_qubit_params(rng: np.random.Generator, pure_fraction: float = 1.0):
    alpha = rng.uniform(0, 1)
    r = np.sqrt(alpha * (1 - alpha)) * rng.uniform(0, pure_fraction)
    return alpha, r * np.exp(1j * rng.uniform(0, 2 * np.pi))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
