from hypothesis import settings

from helpers import ACCEPTANCE_LINES

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
