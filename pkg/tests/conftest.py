import pytest

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion under ``name``."""
    records = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        records.append(name)
        ACCEPTANCE[name] = (ok, detail)

    yield record
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else False
    for name in records:
        if failed and ACCEPTANCE[name][0]:
            ACCEPTANCE[name] = (False, ACCEPTANCE[name][1] + " (test failed)")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
