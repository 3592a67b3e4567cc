import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for name, mod in list(sys.modules.items()):
        if name.endswith("test_acceptance") and mod is not None:
            lines = getattr(mod, "REPORT_LINES", [])
            break
    if lines:
        terminalreporter.write_sep("-", "acceptance report")
        for line in lines:
            terminalreporter.write_line(line)
