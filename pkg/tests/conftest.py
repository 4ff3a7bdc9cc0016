import pytest

_CRITERIA: list[tuple[str, bool, str]] = []


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False, help="run opt-in slow reproductions")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="slow; pass --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def criterion():
    """Record an acceptance outcome, then assert it."""

    def report(name: str, ok: bool, detail: str = "") -> None:
        _CRITERIA.append((name, bool(ok), detail))
        assert ok, f"{name}: {detail}"

    return report


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
