"""Shared pytest plumbing.

The acceptance tests record one human-readable verdict line per criterion;
those lines are replayed in the terminal summary so they are visible even
when output capture is on.
"""

VERDICT_LINES: list[str] = []


def record_verdict(line: str) -> None:
    VERDICT_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if VERDICT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in VERDICT_LINES:
            terminalreporter.write_line(line)
