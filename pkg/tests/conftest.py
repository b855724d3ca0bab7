import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Tag a test with the acceptance criterion it exercises."""
    def tag(number):
        ACCEPTANCE.setdefault(number, "PASS")
        request.node.user_properties.append(("criterion", number))
    return tag


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and not rep.passed:
        for key, number in item.user_properties:
            if key == "criterion":
                ACCEPTANCE[number] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line("criterion %d: %s" % (number, ACCEPTANCE[number]))
