from __future__ import annotations

from pathlib import Path

import pytest

from polyparam.parser import load_model

MODELS = Path(__file__).resolve().parent.parent / "models"


@pytest.fixture
def model():
    return lambda name: load_model(MODELS / name)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
