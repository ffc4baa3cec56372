"""Shared test plumbing: surfaces the acceptance criterion report.

``tests/test_acceptance.py`` appends one line per criterion to
``ACCEPTANCE_LINES``; this hook prints them after the run so the
pass/fail record is visible even though pytest captures test stdout.
"""

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
