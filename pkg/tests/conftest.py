import pytest
from hypothesis import settings

from surfjones.corpus import load_corpus

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

CRITERIA: list[str] = []


def record(number: int, ok: bool, detail: str) -> None:
    CRITERIA.append(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()
