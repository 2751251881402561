import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

EXTENDED = os.environ.get("TRISOLVE_EXTENDED", "") not in ("", "0")

# acceptance lines collected during the run, printed in the summary
ACCEPTANCE: list[str] = []


def pytest_collection_modifyitems(config, items):
    if EXTENDED:
        return
    skip = pytest.mark.skip(reason="extended tier; set TRISOLVE_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)


@pytest.fixture
def report():
    """Record one acceptance line: ``report(criterion, ok, detail)``."""

    def _report(criterion: str, ok: bool, detail: str) -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
        ACCEPTANCE.append(line)
        print(line)
        return ok

    return _report


@pytest.fixture
def results_file(tmp_path, monkeypatch):
    path = tmp_path / "results.jsonl"
    monkeypatch.setenv("TRISOLVE_RESULTS", str(path))
    return path
