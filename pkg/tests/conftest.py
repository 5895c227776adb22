"""Shared pytest plumbing.

The acceptance tests register one PASS/FAIL line each; the hook below
replays them in the terminal summary so the verdicts stay visible even
when pytest captures per-test output.
"""

_lines = []


def record_line(line):
    _lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _lines:
        terminalreporter.section("acceptance")
        for line in _lines:
            terminalreporter.write_line(line)
