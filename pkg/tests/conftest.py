import pytest

_CRITERIA = []


@pytest.fixture
def report():
    """Record one acceptance line: ``report(label, passed, detail)``.

    ``passed=None`` records a skipped criterion.
    """

    def _report(label, passed, detail=""):
        _CRITERIA.append((label, passed, detail))
        return passed

    return _report


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _CRITERIA:
        status = "SKIP" if passed is None else "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {label}  {detail}")
