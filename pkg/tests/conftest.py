import importlib

import numpy as np
import pytest

from vekua_ohm import _kernels_py


def _backends():
    out = [pytest.param(_kernels_py, id="python")]
    try:
        out.append(pytest.param(importlib.import_module("vekua_ohm._kernels"), id="compiled"))
    except ImportError:
        pass
    return out


BACKENDS = _backends()


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
