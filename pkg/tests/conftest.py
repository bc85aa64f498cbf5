import random
import time
from math import gcd

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from torusfill.lattice import I, Mat2, PrimitiveClass, T_A, T_B

settings.register_profile(
    "seeded",
    derandomize=True,
    deadline=None,
    max_examples=200,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("seeded")

F = Mat2(-39, 25, -25, 16)

GENS = [T_A, T_B, T_A.inverse(), T_B.inverse()]


def word_matrix(letters) -> Mat2:
    m = I
    for k in letters:
        m = m @ GENS[k]
    return m


def random_sl2z(rng: random.Random, length: int = 10) -> Mat2:
    return word_matrix(rng.randrange(4) for _ in range(rng.randint(0, length)))


def random_class(rng: random.Random, bound: int = 50) -> PrimitiveClass:
    while True:
        p, q = rng.randint(-bound, bound), rng.randint(-bound, bound)
        try:
            return PrimitiveClass(p, q)
        except ValueError:
            continue


sl2z_matrices = st.lists(st.integers(0, 3), max_size=14).map(word_matrix)


@st.composite
def primitive_classes(draw, bound=60):
    p = draw(st.integers(-bound, bound))
    q = draw(st.integers(-bound, bound))
    if p == 0:
        q = -1 if q < 0 else 1
    elif gcd(p, q) != 1:
        # walk to a coprime neighbour deterministically
        q += 1
        while gcd(p, q) != 1:
            q += 1
    return PrimitiveClass(p, q)


@pytest.fixture
def f_matrix():
    return F


# -- acceptance summary --------------------------------------------------------

_acceptance: list[tuple[str, str]] = []
_session_start = time.perf_counter()
FULL_SUITE_LIMIT = 60.0


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome.upper()))
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.failed:
        _acceptance.append((report.nodeid.split("::")[-1], "ERROR"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        status = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
    elapsed = time.perf_counter() - _session_start
    status = "PASS" if elapsed < FULL_SUITE_LIMIT else "FAIL"
    terminalreporter.write_line(
        f"{status}  full test run took {elapsed:.1f}s (limit {FULL_SUITE_LIMIT:.0f}s)"
    )
