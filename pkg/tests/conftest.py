import pytest

from .acceptance_log import LINES


def pytest_terminal_summary(terminalreporter):
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def tmp_cache(tmp_path):
    return str(tmp_path / "cache.jsonl")
