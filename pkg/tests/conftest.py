"""Shared fixtures and the acceptance-suite report hook."""

# Populated by tests/test_acceptance.py: (number, description, status, seconds).
ACCEPTANCE_RESULTS: list[tuple[int, str, str, float]] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, status, elapsed in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(
            f"criterion {num:2d} {status:4s} {elapsed:7.2f}s  {desc}"
        )
