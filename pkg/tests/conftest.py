import time

SESSION_START = time.monotonic()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    elapsed = time.monotonic() - SESSION_START
    terminalreporter.write_line(f"full suite wall time: {elapsed:.1f}s (budget 60s)")
