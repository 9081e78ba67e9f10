import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def acceptance(request, capsys):
    """``record(n, ok, detail)`` prints one PASS/FAIL line for criterion n."""
    lines = request.config.stash[_LINES]

    def record(n: int, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        with capsys.disabled():
            print("\n" + line)

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
