import pytest

from permlab.genperm import sturmian_permutation, word_permutation
from permlab.words import fibonacci_word, thue_morse

_acceptance = {}


@pytest.fixture
def tm_perm():
    return word_permutation(thue_morse())


@pytest.fixture
def fib_sturmian():
    return sturmian_permutation()  # Fibonacci word, x=1, y=sqrt(2), a0=0


@pytest.fixture
def fib():
    return fibonacci_word()


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = report.keywords.get("criterion")
    if "test_acceptance.py" in report.nodeid and marker is not None:
        name = report.nodeid.split("::")[-1]
        _acceptance[name] = (report.outcome, report.duration)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion: acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, (outcome, duration) in sorted(
        _acceptance.items(), key=lambda kv: int(kv[0].split("_")[1])
    ):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.2f}s)")
