from support import ACCEPTANCE


def pytest_terminal_summary(terminalreporter, config):
    lines = sorted(config.stash.get(ACCEPTANCE, []))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in lines:
            terminalreporter.write_line(line)
