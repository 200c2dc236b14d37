import os

import pytest
from hypothesis import HealthCheck, settings

from coquasi.radford import prepare
from coquasi.zoo import ZOO_NAMES, build

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=10, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def zoo():
    return {name: build(name) for name in ZOO_NAMES}


@pytest.fixture(scope="session")
def contexts(zoo):
    """Lazily prepared Radford contexts, shared across the session."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = prepare(zoo[name])
        return cache[name]

    return get


def pytest_sessionstart(session):
    import time
    session.config._coquasi_start = time.time()


def pytest_collection_modifyitems(config, items):
    # acceptance last, so its timing clause covers the whole suite
    items.sort(key=lambda it: it.nodeid.startswith("tests/test_acceptance.py"))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA, RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, _ in CRITERIA:
        if label in RESULTS:
            ok, detail = RESULTS[label]
            terminalreporter.write_line(f"{label} {'PASS' if ok else 'FAIL'}  {detail}")
