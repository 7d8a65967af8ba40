import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, text): acceptance criterion covered by a test")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    label, text = mark.args
    failed = call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception)
    if call.when == "call" or failed:
        prev = _results.get(label, (text, True))
        _results[label] = (text, prev[1] and not failed)


def _key(label):
    num = "".join(ch for ch in label if ch.isdigit())
    return int(num), label


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_results, key=_key):
        text, ok = _results[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  [{label:>3}] {text}")
