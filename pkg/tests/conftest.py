from __future__ import annotations

from pathlib import Path

import pytest

from newtonmass.parse import load_system

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

_acceptance_lines: list = []


def corpus_files():
    return sorted(CORPUS.glob("*.sys"))


def corpus_systems():
    return [(p.stem, load_system(p)) for p in corpus_files()]


@pytest.fixture
def criterion(capsys):
    """Print one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}"
        if detail:
            line += f": {detail}"
        _acceptance_lines.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
