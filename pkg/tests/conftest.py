"""Session hooks.

Every elementary step built with ``ElementaryStep.from_pair`` anywhere in
the run is checked for ``det(I - tUV) == det(I - tVU)`` as it is created,
and the acceptance tests get a one-line verdict each in the summary.
"""

import pytest

from polyshift import sse

STEPS_CHECKED = []
_ACCEPTANCE = {}


@pytest.fixture(autouse=True, scope="session")
def _zeta_on_every_step():
    original = sse.ElementaryStep.from_pair.__func__

    def checked(cls, u, v):
        step = original(cls, u, v)
        ok = sse.zeta_invariant(step)
        STEPS_CHECKED.append(ok)
        assert ok, f"det(I - tUV) != det(I - tVU) for U={u}, V={v}"
        return step

    sse.ElementaryStep.from_pair = classmethod(checked)
    yield
    sse.ElementaryStep.from_pair = classmethod(original)


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[marker] = report.outcome


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (number, text), outcome in sorted(_ACCEPTANCE.items()):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {text}")
