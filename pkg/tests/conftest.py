import pytest

_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _criteria.get(report.nodeid)
    if marker is not None:
        number, title = marker
        prev = _RESULTS.get(number, (title, True))
        _RESULTS[number] = (title, prev[1] and report.passed)


_RESULTS = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criteria[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok = _RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}")


@pytest.fixture
def table_file(tmp_path):
    """Write projector values to a file and return its ``table:`` spec text."""
    counter = iter(range(10**6))

    def make(values):
        path = tmp_path / f"table{next(counter)}.txt"
        path.write_text("".join(f"{v}\n" for v in values))
        return f"table:{path}"

    return make
