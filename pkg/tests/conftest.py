import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance gate's one-line-per-criterion verdicts.

    The acceptance tests print their PASS/FAIL lines as they run, but
    stdout capture hides the passing ones; this repeats every recorded
    line where it is always visible.
    """
    for name in ("test_acceptance", "tests.test_acceptance"):
        module = sys.modules.get(name)
        if module is not None:
            break
    else:
        return
    lines = getattr(module, "CRITERION_LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
