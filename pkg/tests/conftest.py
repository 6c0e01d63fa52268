from hypothesis import settings

settings.register_profile("default", max_examples=30, deadline=None)
settings.load_profile("default")



def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
