import pytest
from hypothesis import HealthCheck, settings, strategies as st

from recolle.gf2 import BitMatrix

settings.register_profile("recolle", derandomize=True, max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("recolle")


@st.composite
def matrices(draw, max_rows=5, max_cols=5, nrows=None, ncols=None):
    r = draw(st.integers(0, max_rows)) if nrows is None else nrows
    c = draw(st.integers(0, max_cols)) if ncols is None else ncols
    flat = draw(st.integers(0, (1 << (r * c)) - 1)) if r * c else 0
    return BitMatrix.from_flat(r, c, flat)


@pytest.fixture(scope="session")
def rec21():
    from recolle.catalog import build_rec_2_1
    return build_rec_2_1()


@pytest.fixture(scope="session")
def rec22():
    from recolle.catalog import build_rec_2_2
    return build_rec_2_2()


@pytest.fixture(scope="session")
def mv21(rec21):
    from recolle.catalog import build_mv_of
    return build_mv_of(rec21)


_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{_ACCEPTANCE[name]}  {name[len('test_criterion_'):]}")
