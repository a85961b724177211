import sys
from pathlib import Path

# tests import the shared naive helpers as a plain module
sys.path.insert(0, str(Path(__file__).resolve().parent))

_results: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one of the numbered acceptance criteria")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("acceptance")
    if mark is None or call.when != "call":
        return
    number, title = mark.args
    status = "PASS" if call.excinfo is None else "FAIL"
    _results[number] = (status, title, call.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        status, title, secs = _results[number]
        terminalreporter.write_line(f"[{status}] criterion {number:2d}: {title} ({secs:.1f}s)")
