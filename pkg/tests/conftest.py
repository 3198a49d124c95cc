import pytest

RESULTS: dict[int, str] = {}


@pytest.fixture
def criterion(request, capsys):
    """Yields a recorder; the test's outcome becomes one PASS/FAIL line."""
    import time

    class Recorder:
        number = request.node.get_closest_marker("criterion").args[0]
        detail = ""
        t0 = time.perf_counter()

    rec = Recorder()
    yield rec
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    line = "criterion %d: %s  (%.1fs) %s" % (rec.number, "PASS" if ok else "FAIL",
                                             time.perf_counter() - rec.t0, rec.detail)
    RESULTS[rec.number] = line
    with capsys.disabled():
        print("\n" + line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    out = yield
    rep = out.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
