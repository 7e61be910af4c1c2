import numpy as np
import pytest

from affine_hypersurfaces import (
    ExpPair,
    HypersurfaceSpec,
    Linear,
    LogCos,
    Polynomial,
    Quadratic,
    TrigPair,
    identity_map,
    make_affine_map,
)

ACCEPTANCE_RESULTS = []


def record_criterion(name, passed, detail=""):
    ACCEPTANCE_RESULTS.append((name, bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {name}" + (f"  ({detail})" if detail else ""))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def shear():
    return make_affine_map([[1.0, 0.0], [1.0, 1.0]])


@pytest.fixture
def paraboloid():
    return HypersurfaceSpec(identity_map(2), [Quadratic(1.0), Quadratic(1.0)])


SAMPLE_PROFILES = [
    Linear(0.7, -0.2),
    Quadratic(1.3, -0.4, 0.5),
    Polynomial((0.5, -1.0, 0.3, 0.8, -0.2)),
    ExpPair(0.6, -0.4, 0.9, 0.1),
    TrigPair(0.8, 0.3, 1.2, -0.5),
    LogCos(0.7),
]
