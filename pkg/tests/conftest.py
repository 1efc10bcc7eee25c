import sys
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


def _read_tsv(name):
    rows = []
    for line in (DATA / name).read_text(encoding="utf-8").splitlines():
        if line.startswith("#") or not line:
            continue
        rows.append(line.split("\t"))
    return rows


@pytest.fixture(scope="session")
def table3_rows():
    """(decimal, symbol, ternary) as printed, duplicate T included."""
    return [(int(d), s, t) for d, s, t in _read_tsv("table3.tsv")]


@pytest.fixture(scope="session")
def table4_rows():
    """(symbol, ternary, bits) as printed."""
    return [tuple(r) for r in _read_tsv("table4.tsv")]


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in acceptance.RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
