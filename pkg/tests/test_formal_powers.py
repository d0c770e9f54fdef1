import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vekua_ohm.formal_powers import (
    FormalPowerSpec,
    GeneratingSequence,
    TaylorSeries,
    closed_form_power,
    closed_form_power_textbook,
    fg_integral,
    formal_power,
    formal_power_field,
    formal_power_zero,
    path_independence_check,
    sequence_pair,
    taylor_coefficients,
    taylor_eval,
)
from vekua_ohm.pseudoanalytic import GeneratingPair, Point, bers_derivative_field, zeta
from vekua_ohm.quadrature import Path

S1, S2 = 3.0, 1.0
SEQ = GeneratingSequence.exponential(S1, S2)
HOM = GeneratingSequence.homogeneous()
coord = st.floats(min_value=-0.7, max_value=0.7)


def test_sequence_pairs():
    x1, x2 = 0.3, -0.4
    P0, P1, P2 = (sequence_pair(SEQ, m) for m in range(3))
    assert P0.F(x1, x2) == pytest.approx(math.exp(-3 * x1 + x2))
    assert P0.G(x1, x2) == pytest.approx(1j * math.exp(3 * x1 - x2))
    assert P1.F(x1, x2) == pytest.approx(math.exp(-3 * x1 - x2))
    assert P1.G(x1, x2) == pytest.approx(1j * math.exp(3 * x1 + x2))
    assert P2.F(x1, x2) == P0.F(x1, x2) and P2.G(x1, x2) == P0.G(x1, x2)
    with pytest.raises(ValueError):
        sequence_pair(SEQ, -1)


def test_fg_integral_examples():
    hom = GeneratingPair.homogeneous()
    one = lambda a, b: np.ones_like(a) + 0j
    zero = lambda a, b: np.zeros_like(a) + 0j
    assert fg_integral(one, hom, Path.straight((0, 0), (0, 1))) == pytest.approx(1.0)
    assert fg_integral(zero, sequence_pair(SEQ, 0), Path.straight((0, 0), (0.3, 0.2))) == 0
    W = formal_power_zero(SEQ, 1, 1)
    at = (0.25, -0.4)
    got = fg_integral(W, sequence_pair(SEQ, 0), Path.straight((0, 0), at))
    assert got == pytest.approx(closed_form_power(1, 1, S1, S2, at), abs=1e-12)


def test_formal_power_zero_examples():
    at = (0.2, 0.1)
    assert formal_power_zero(SEQ, 0, 1)(*at) == pytest.approx(math.exp(-0.6 + 0.1))
    assert formal_power_zero(SEQ, 0, 1j)(*at) == pytest.approx(1j * math.exp(0.6 - 0.1))
    assert formal_power_zero(HOM, 0, 2 + 3j)(*at) == pytest.approx(2 + 3j)


@pytest.mark.parametrize("m, coeff, at, want", [
    (0, 1, (0.0, 0.0), 1.0),
    (1, 1, (0.0, 0.5), math.sinh(0.5)),
    (0, 1j, (0.1, 0.1), 1j * math.exp(0.2)),
    (1, 1j, (0.2, 0.0), -math.sinh(0.6) / 3),
])
def test_closed_form_values(m, coeff, at, want):
    assert closed_form_power(m, coeff, S1, S2, at) == pytest.approx(want, abs=1e-15)


def test_removable_singularity_series_vs_direct():
    # sigma1 x1 - sigma2 x2 = 1e-6
    x2 = 0.3
    x1 = (S2 * x2 + 1e-6) / S1
    for c in (1, 1j):
        a = closed_form_power_textbook(2, c, S1, S2, (x1, x2), series=True)
        b = closed_form_power_textbook(2, c, S1, S2, (x1, x2), series=False)
        assert abs(a - b) < 1e-10
        assert abs(a - closed_form_power(2, c, S1, S2, (x1, x2))) < 1e-10
    assert np.isfinite(closed_form_power(2, 1, S1, S2, (0.1, 0.3)))


@given(coord, coord)
@settings(max_examples=60, deadline=None)
def test_stable_and_textbook_forms_agree(x1, x2):
    for m in range(3):
        for c in (1, 1j):
            a = closed_form_power(m, c, S1, S2, (x1, x2))
            b = closed_form_power_textbook(m, c, S1, S2, (x1, x2))
            assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


@pytest.mark.parametrize("m", [0, 1, 2])
@pytest.mark.parametrize("coeff", [1, 1j])
def test_zero_sigma_reduces_to_monomial(m, coeff):
    at = (0.3, -0.6)
    assert closed_form_power(m, coeff, 0.0, 0.0, at) == pytest.approx(coeff * zeta(*at) ** m, abs=1e-15)


def test_closed_form_rejects_other_inputs():
    with pytest.raises(ValueError):
        closed_form_power(3, 1, S1, S2, (0, 0))
    with pytest.raises(ValueError):
        closed_form_power(1, 2, S1, S2, (0, 0))


@pytest.mark.parametrize("m, coeff, at", [
    (1, 1, (0.0, 0.5)),
    (1, 1j, (-0.6, 0.3)),
    (2, 1j, (0.3, -0.2)),
    (2, 1, (0.5, 0.6)),
])
def test_numeric_powers_match_closed_forms(m, coeff, at):
    got = formal_power(SEQ, FormalPowerSpec(0, m, coeff), at, tol=1e-10)
    ref = closed_form_power(m, coeff, S1, S2, at)
    assert abs(got - ref) <= 1e-8 * abs(ref)


def test_numeric_power_along_custom_path():
    spec = FormalPowerSpec(0, 2, 1)
    at = (0.4, -0.3)
    bent = formal_power(SEQ, spec, at, path=[(0, 0), (0.5, 0.2), at])
    assert bent == pytest.approx(closed_form_power(2, 1, S1, S2, at), abs=1e-9)
    with pytest.raises(ValueError):
        formal_power(SEQ, spec, at, path=[(0.1, 0), at])


def test_homogeneous_cube():
    at = (0.3, 0.5)
    got = formal_power(HOM, FormalPowerSpec(0, 3, 1), at)
    assert got == pytest.approx(zeta(*at) ** 3, abs=1e-12)


def test_power_field_vectorized():
    f = formal_power_field(SEQ, FormalPowerSpec(0, 1, 1j))
    x1 = np.array([0.1, -0.2])
    x2 = np.array([0.3, 0.4])
    assert np.allclose(f(x1, x2), closed_form_power(1, 1j, S1, S2, (x1, x2)), atol=1e-12)


def test_formal_power_spec_validation():
    with pytest.raises(ValueError):
        FormalPowerSpec(-1, 0, 1)


def test_taylor_coefficients_of_first_power():
    W = lambda a, b: closed_form_power(1, 1, S1, S2, (a, b))
    ts = taylor_coefficients(W, SEQ, Point(0.0, 0.0), M=2)
    assert abs(ts.coefficients[0]) < 1e-9
    assert ts.coefficients[1] == pytest.approx(1.0, abs=1e-5)
    assert abs(ts.coefficients[2]) < 1e-3


def test_taylor_coefficients_of_generator():
    F0 = sequence_pair(SEQ, 0).F
    ts = taylor_coefficients(F0, SEQ, Point(0.1, 0.2), M=1)
    assert ts.coefficients[0] == pytest.approx(F0(0.1, 0.2))
    assert abs(ts.coefficients[1]) < 1e-6


def test_taylor_coefficients_homogeneous():
    W = lambda a, b: 2 + 3 * zeta(a, b) ** 2
    ts = taylor_coefficients(W, HOM, Point(0.0, 0.0), M=3)
    assert np.allclose(ts.coefficients, [2, 0, 3, 0], atol=1e-5)


def test_taylor_eval():
    at = (0.0, 0.5)
    ts = TaylorSeries(Point(0.0, 0.0), [0.0, 1.0], [False, False])
    assert taylor_eval(ts, SEQ, at) == pytest.approx(math.sinh(0.5), abs=1e-14)
    ts = TaylorSeries(Point(0.0, 0.0), [1.0], [False])
    assert taylor_eval(ts, SEQ, (0.2, 0.1)) == pytest.approx(closed_form_power(0, 1, S1, S2, (0.2, 0.1)))
    ts = TaylorSeries(Point(0.0, 0.0), [0.0, 1 + 1j], [False, False])
    at = (0.3, -0.1)
    want = closed_form_power(1, 1, S1, S2, at) + closed_form_power(1, 1j, S1, S2, at)
    assert taylor_eval(ts, SEQ, at) == pytest.approx(want, abs=1e-14)


def test_path_independence():
    loop = Path.circle((0.1, -0.1), 0.5, 48)
    W0 = lambda a, b: closed_form_power(2, 1j, S1, S2, (a, b))
    dW = bers_derivative_field(W0, sequence_pair(SEQ, 0))
    assert path_independence_check(dW, sequence_pair(SEQ, 0), loop, tol=1e-8) < 1e-6
    zero = lambda a, b: np.zeros_like(a) + 0j
    assert path_independence_check(zero, sequence_pair(SEQ, 0), loop) == 0
    conj = lambda a, b: np.conj(zeta(a, b))
    assert path_independence_check(conj, GeneratingPair.homogeneous(), Path.circle((0, 0), 1.0, 64)) > 1.0
    with pytest.raises(ValueError):
        path_independence_check(zero, sequence_pair(SEQ, 0), [(0, 0), (0.1, 0.1)])
