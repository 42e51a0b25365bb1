import random

import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240611, help="seed for randomized property suites")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion; asserts the outcome."""
    import time

    class _Criterion:
        def __init__(self):
            self.start = time.perf_counter()

        def finish(self, label, ok, limit_s, detail=""):
            elapsed = time.perf_counter() - self.start
            passed = bool(ok) and elapsed < limit_s
            status = "PASS" if passed else "FAIL"
            line = f"[{status}] {label} ({elapsed:.2f}s, limit {limit_s:g}s){' ' + detail if detail else ''}"
            ACCEPTANCE_LINES.append(line)
            print(line)
            assert ok, f"{label}: {detail}"
            assert elapsed < limit_s, f"{label}: took {elapsed:.1f}s, limit {limit_s}s"

    return _Criterion()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
