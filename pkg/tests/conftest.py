"""
Shared backends and factorizations
Backends are session-scoped so hypothesis tests can use them.
"""
import logging
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from factn.algebra import Field, Matrix, Ring
from factn.ambient import (
    EndoTwistBackend,
    FieldScalarBackend,
    GradedShiftBackend,
    PolyClassicalBackend,
)
from factn.factcat import NFactorization

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

settings.register_profile(
    "default", max_examples=15, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile(
    "slow", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-size batches, run with --runslow")
    settings.load_profile("slow" if config.getoption("--runslow") else "default")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def mat(ring: Ring, rows, cols=None) -> Matrix:
    return Matrix.from_rows(ring, rows, cols)


def fact(backend, rows_list, ranks=None) -> NFactorization:
    """Factorization with ungraded objects from nested lists of entries"""
    ring = backend.ring
    diffs = [mat(ring, rows) for rows in rows_list]
    if ranks is None:
        ranks = [d.cols for d in diffs]
    objects = [backend.make_object(r) for r in ranks]
    return NFactorization(backend, objects, diffs)


# ============================================
# Backends
# ============================================

@pytest.fixture(scope="session")
def f2_backend():
    return FieldScalarBackend(Field.prime(2), 1)


@pytest.fixture(scope="session")
def f5_backend():
    return FieldScalarBackend(Field.prime(5), 1)


@pytest.fixture(scope="session")
def f5_zero_backend():
    return FieldScalarBackend(Field.prime(5), 0)


@pytest.fixture(scope="session")
def qxy():
    return Ring(Field.rationals(), ("x", "y"))


@pytest.fixture(scope="session")
def classical(qxy):
    return PolyClassicalBackend(qxy, qxy.parse("x*y"))


@pytest.fixture(scope="session")
def graded():
    ring = Ring(Field.rationals(), ("x", "y"), (1, 1))
    return GradedShiftBackend(ring, ring.parse("x*y"))


@pytest.fixture(scope="session")
def endo():
    return EndoTwistBackend.from_mapping(Ring(Field.rationals(), ("x",)), {"x": "x^2"})


@pytest.fixture(scope="session")
def endo_invertible(qxy):
    return EndoTwistBackend.from_mapping(qxy, {"x": "y", "y": "x + 1"})


# ============================================
# Factorizations
# ============================================

@pytest.fixture(scope="session")
def xy(classical):
    """The factorization x * y = w over Q[x,y]"""
    return fact(classical, [[["x"]], [["y"]]])


@pytest.fixture(scope="session")
def graded_xy(graded):
    ring = graded.ring
    objects = [graded.make_object(1, [0]), graded.make_object(1, [1])]
    return NFactorization(graded, objects, [mat(ring, [["x"]]), mat(ring, [["y"]])])


@pytest.fixture(scope="session")
def concentrated(f5_zero_backend):
    """n = 4, c = 0, a single rank-1 component at index 2"""
    ring = f5_zero_backend.ring
    objects = [f5_zero_backend.make_object(r) for r in (0, 0, 1, 0)]
    diffs = [
        Matrix.zeros(ring, 0, 0),
        Matrix.zeros(ring, 1, 0),
        Matrix.zeros(ring, 0, 1),
        Matrix.zeros(ring, 0, 0),
    ]
    return NFactorization(f5_zero_backend, objects, diffs)


@pytest.fixture
def restore_logging():
    """Put the root logger back after a test that calls setup_logging"""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers[:] = handlers
    root.setLevel(level)
