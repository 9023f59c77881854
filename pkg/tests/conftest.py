import json
from pathlib import Path

import pytest

from impossibility_lab.sperner import triangulation_from_dict

ROOT = Path(__file__).resolve().parents[1]
PAPER_FIG = ROOT / "fixtures" / "paper_fig_2d.json"


@pytest.fixture
def paper_fig():
    return triangulation_from_dict(json.loads(PAPER_FIG.read_text()))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
