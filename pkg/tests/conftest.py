import pytest

from circulattice.modp import Params

_NOTES: dict = {}


@pytest.fixture
def p35():
    return Params(3, 5)


@pytest.fixture
def report(request):
    """Attach a one-line summary to the running acceptance criterion."""
    def add(text):
        _NOTES.setdefault(request.node.name, []).append(str(text))
    return add


def pytest_terminal_summary(terminalreporter):
    reports = []
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when == "call" and "test_acceptance.py::test_criterion_" in rep.nodeid:
                reports.append(rep)
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for rep in sorted(reports, key=lambda r: int(r.nodeid.split("_criterion_")[1].split("_")[0])):
        name = rep.nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if rep.passed else 'FAIL'}  {name}")
        for note in _NOTES.get(name, []):
            terminalreporter.write_line(f"      {note}")
