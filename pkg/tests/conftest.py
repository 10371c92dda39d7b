import pytest

ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(ACCEPTANCE, {})


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash.get(ACCEPTANCE, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(log):
        terminalreporter.write_line(log[n])
