import importlib
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import vekua_ohm
from vekua_ohm import _kernels_py
from vekua_ohm.formal_powers import closed_form_power_textbook

from conftest import BACKENDS

coord = st.floats(min_value=-1.0, max_value=1.0)
sig = st.floats(min_value=-4.0, max_value=4.0)


@pytest.mark.parametrize("m", [0, 1, 2])
@pytest.mark.parametrize("coeff_i", [False, True])
def test_closed_form_matches_textbook(backend, m, coeff_i, rng):
    x1, x2 = rng.uniform(-1, 1, (2, 50))
    got = backend.closed_form_power(m, coeff_i, 3.0, 1.0, x1, x2)
    want = closed_form_power_textbook(m, 1j if coeff_i else 1, 3.0, 1.0, (x1, x2))
    assert np.allclose(got, want, rtol=1e-12, atol=1e-14)


@given(sig, sig, coord, coord)
@settings(max_examples=80, deadline=None)
def test_backends_agree_on_powers(s1, s2, x1, x2):
    ref = [_kernels_py.closed_form_power(m, c, s1, s2, x1, x2) for m in range(3) for c in (False, True)]
    for param in BACKENDS:
        k = param.values[0]
        got = [k.closed_form_power(m, c, s1, s2, x1, x2) for m in range(3) for c in (False, True)]
        assert np.allclose(got, ref, rtol=1e-13, atol=1e-15)


def test_exp_current_shape_and_scale(backend):
    x1 = np.linspace(-1, 1, 6).reshape(2, 3)
    j1, j2 = backend.exp_current(0, False, 3.0, 1.0, 0.5, x1, 0.5, 0.2)
    assert j1.shape == (2, 3)
    assert np.allclose(j1, np.exp(2 * 0.5 + 2 * 0.5 * 0.2))
    assert np.all(j2 == 0)


@pytest.mark.parametrize("rule", [0, 1])
def test_trace_parity(rule):
    args = (1, False, 3.0, 1.0, 0.3, -0.2, 1.0, rule, 0.01, 0.01, 10.0, 1.0, 1e-4, 0.1, 3000, 1e-12)
    ref, reason = _kernels_py.trace(*args)
    for param in BACKENDS:
        pts, r = param.values[0].trace(*args)
        assert r == reason
        assert pts.shape == ref.shape
        assert np.allclose(pts, ref, atol=1e-12)


def test_trace_stagnation_at_zero(backend):
    pts, reason = backend.trace(1, False, 3.0, 1.0, 0.0, 0.0, 1.0, 0, 0.01, 0.01, 10.0, 1.0,
                                1e-4, 0.1, 100, 1e-12)
    assert reason == backend.STAGNATION and pts.shape == (1, 2)


def test_trace_max_steps(backend):
    pts, reason = backend.trace(0, False, 0.0, 0.0, -0.5, 0.0, 1.0, 0, 0.001, 0.01, 10.0, 1.0,
                                1e-4, 0.1, 10, 1e-12)
    assert reason == backend.MAX_STEPS and len(pts) == 11
    assert np.allclose(pts[-1], [-0.49, 0.0])


def test_out_of_range_degree(backend):
    with pytest.raises(ValueError):
        backend.closed_form_power(3, False, 1.0, 1.0, 0.0, 0.0)


def test_pure_python_switch():
    env = dict(os.environ, VEKUA_OHM_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import vekua_ohm; print(vekua_ohm.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert vekua_ohm.BACKEND in ("compiled", "python")
