import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vekua_ohm.errors import EvaluationDomainError, QuadratureError
from vekua_ohm.pseudoanalytic import zeta
from vekua_ohm.quadrature import Path, integrate

coord = st.floats(min_value=-1.0, max_value=1.0)


@given(coord, coord, coord, coord)
@settings(max_examples=50, deadline=None)
def test_antiderivative_of_exp(a1, a2, b1, b2):
    val, err = integrate(lambda x1, x2: np.exp(zeta(x1, x2)), Path.straight((a1, a2), (b1, b2)), tol=1e-12)
    ref = np.exp(zeta(b1, b2)) - np.exp(zeta(a1, a2))
    assert abs(val - ref) < 1e-11
    assert err <= 1e-12


def test_polyline_is_path_independent_for_analytic_integrand():
    f = lambda x1, x2: zeta(x1, x2) ** 3
    direct, _ = integrate(f, Path.straight((0, 0), (0.5, 0.7)))
    bent, _ = integrate(f, Path.of([(0, 0), (0.9, -0.2), (-0.3, 0.4), (0.5, 0.7)]))
    assert abs(direct - bent) < 1e-9
    assert direct == pytest.approx((0.7 + 0.5j) ** 4 / 4, abs=1e-12)


def test_dzeta_orientation():
    # moving along x1 advances zeta by i
    val, _ = integrate(lambda x1, x2: np.ones_like(x1) + 0j, Path.straight((0, 0), (1, 0)))
    assert val == pytest.approx(1j)


def test_stacked_integrands():
    f = lambda x1, x2: np.stack([np.ones_like(x1) + 0j, zeta(x1, x2)])
    val, _ = integrate(f, Path.straight((0, 0), (0, 2)))
    assert val.shape == (2,)
    assert val == pytest.approx([2.0, 2.0])


def test_circle_is_closed():
    c = Path.circle((0.1, 0.2), 0.3, n=16)
    assert c.closed and len(c.vertices) == 17
    assert c.length() == pytest.approx(2 * 16 * 0.3 * np.sin(np.pi / 16))


def test_conj_around_polygon_is_nonzero():
    val, _ = integrate(lambda x1, x2: np.conj(zeta(x1, x2)), Path.circle((0, 0), 1.0, 256))
    # zeta = x2 + i x1 runs clockwise when (x1, x2) runs counter-clockwise
    assert val == pytest.approx(-2j * 256 / 2 * np.sin(2 * np.pi / 256), rel=1e-10)


def test_zero_length_path():
    val, err = integrate(lambda x1, x2: np.ones_like(x1) + 0j, Path.of([(0.2, 0.2), (0.2, 0.2)]))
    assert val == 0 and err == 0


def test_non_convergence_raises_with_estimate():
    f = lambda x1, x2: np.exp(1j * 4000.0 * x2)
    with pytest.raises(QuadratureError) as info:
        integrate(f, Path.straight((0, 0), (0, 1)), tol=1e-14, max_depth=3)
    assert info.value.estimate > 0


def test_non_finite_integrand_raises():
    with pytest.raises(EvaluationDomainError):
        integrate(lambda x1, x2: 1.0 / (x2 - 0.5) * np.nan, Path.straight((0, 0), (0, 1)))


@pytest.mark.parametrize("bad", [[(0, 0)], [(0, 0, 0), (1, 1, 1)], [(0, 0), (np.inf, 0)]])
def test_invalid_paths(bad):
    with pytest.raises(ValueError):
        Path.of(bad)
