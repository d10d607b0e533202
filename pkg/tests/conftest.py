import _report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _report.lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _report.lines:
            terminalreporter.write_line(line)
