import pytest

from c2cobordism.context import C2Context


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def C():
    """Everything built at the default truncation N = 10, window N + 2."""
    return C2Context.build(10)


@pytest.fixture(scope="session")
def C6():
    return C2Context.build(6)
