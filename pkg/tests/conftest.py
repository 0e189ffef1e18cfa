import pytest

from tfsm import corpus


@pytest.fixture(scope="session")
def S1():
    return corpus.load("S1")


@pytest.fixture(scope="session")
def S2():
    return corpus.load("S2")


@pytest.fixture(scope="session")
def S3():
    return corpus.load("S3")


@pytest.fixture(scope="session")
def S4():
    return corpus.load("S4")


@pytest.fixture(scope="session")
def B4():
    return corpus.load("B4")


@pytest.fixture(scope="session")
def M1():
    return corpus.load("M1")


@pytest.fixture(scope="session")
def M3():
    return corpus.load("M3")


_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion checked by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = report.user_properties and dict(report.user_properties).get("criterion")
    if label:
        _criteria.append((label, report.outcome))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker and not any(k == "criterion" for k, _ in item.user_properties):
        item.user_properties.append(("criterion", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _criteria:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {label}")
