import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from numrad.ensembles import ginibre, hermitian, positive_definite, stream
from numrad.radius import GridConfig

settings.register_profile(
    "numrad", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("numrad")

ACCEPTANCE_LINES: list[str] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return stream(12345)


@pytest.fixture
def fast_grid():
    return GridConfig(coarse_points=128)


def random_pd(seed, n):
    return positive_definite(stream(seed, 1), n)


def random_ginibre(seed, n):
    return ginibre(stream(seed, 2), n)


def random_hermitian(seed, n):
    return hermitian(stream(seed, 3), n)


def brute_force_radius(A, spec_fn, points=100_000):
    """Dense-grid reference: max over theta of a norm of Re(e^{i theta} A)."""
    A = np.asarray(A, dtype=complex)
    best = 0.0
    for chunk in np.array_split(np.linspace(0.0, np.pi, points, endpoint=False), 50):
        e = np.exp(1j * chunk)[:, None, None]
        R = 0.5 * (e * A + (e * A).conj().transpose(0, 2, 1))
        s = np.linalg.svd(R, compute_uv=False)
        best = max(best, float(np.max(spec_fn(s))))
    return best
