import pytest

from covarray import kernels

# criterion number -> (passed, detail); filled by test_acceptance, printed at session end
ACCEPTANCE = {}


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
