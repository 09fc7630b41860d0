import time

import pytest

_RESULTS: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item.user_properties.append(("elapsed", time.perf_counter() - start))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    n, title = props["criterion"]
    _RESULTS[n] = ("PASS" if report.passed else "FAIL", title, props.get("elapsed", 0.0))


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_RESULTS):
        status, title, elapsed = _RESULTS[n]
        tr.write_line(f"criterion {n:2d}: {status}  {title}  ({elapsed:.1f} s)")
    passed = sum(s == "PASS" for s, _, _ in _RESULTS.values())
    tr.write_line(f"{passed}/{len(_RESULTS)} criteria pass")
