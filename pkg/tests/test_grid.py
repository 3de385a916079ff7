import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dds.grid import MIN_POINTS, ComplexGridField, GridSpec, fd_derivative, relative_residual


def test_gridspec_invariants():
    with pytest.raises(ValueError):
        GridSpec(-1, 1, MIN_POINTS - 1)
    with pytest.raises(ValueError):
        GridSpec(1, -1, 500)
    g = GridSpec.symmetric(0.3, 5.0, 399)
    assert g.is_symmetric()
    assert g.points.size == 399
    assert g.spacing == pytest.approx(10.0 / 400)
    assert g.points[0] == pytest.approx(g.z_min + g.spacing)
    r = g.refined()
    assert r.n_points == 799 and r.spacing == pytest.approx(g.spacing / 2)
    assert np.allclose(r.points[1::2], g.points)


@given(st.floats(0.5, 3.0), st.floats(-2, 2))
def test_fd_derivatives_accuracy(k, phase):
    z = np.linspace(-3, 3, 601)
    f = np.exp(1j * (k * z + phase))
    h = z[1] - z[0]
    d1 = fd_derivative(f, h, 1)
    d2 = fd_derivative(f, h, 2)
    sl = slice(4, -4)
    assert np.max(np.abs(d1[sl] - 1j * k * f[sl])) < 1e-9
    assert np.max(np.abs(d2[sl] + k * k * f[sl])) < 1e-7


def test_fd_bad_order():
    with pytest.raises(ValueError):
        fd_derivative(np.zeros(20), 0.1, 3)
    with pytest.raises(ValueError):
        fd_derivative(np.zeros(5), 0.1, 1)


def test_field_normalization():
    z = np.linspace(-10, 10, 2001)
    f = ComplexGridField(z, 3 * np.exp(-z**2 / 2) * (1 + 1j))
    n = f.normalized()
    assert n.norm() == pytest.approx(1.0)
    assert np.max(np.abs(f.max_normalized().values)) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ComplexGridField(z, np.zeros_like(z)).normalized()
    with pytest.raises(ValueError):
        ComplexGridField(z, np.zeros(3))


def test_relative_residual():
    assert relative_residual(np.zeros(4), np.ones(4)) == 0.0
    assert relative_residual(np.ones(4), np.zeros(4)) == np.inf
