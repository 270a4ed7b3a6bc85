import numpy as np
import pytest

from isosurf.core import Signature

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=[Signature.SimplyIsotropic, Signature.PseudoIsotropic], ids=["simply", "pseudo"])
def sig(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
