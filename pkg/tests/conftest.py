import pytest

ACCEPTANCE = pytest.StashKey()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}


@pytest.fixture
def record(request):
    """record(k, passed, detail) stores the outcome of acceptance criterion k."""
    store = request.config.stash[ACCEPTANCE]

    def _record(k, passed, detail):
        store[k] = (bool(passed), detail)
        print("criterion %2d: %s  %s" % (k, "PASS" if passed else "FAIL", detail))
        return passed
    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(ACCEPTANCE, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(store):
        passed, detail = store[k]
        terminalreporter.write_line("criterion %2d: %s  %s" % (k, "PASS" if passed else "FAIL", detail))
