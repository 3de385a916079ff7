import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dds import qdeform as qd
from dds.errors import BranchPoint, DegenerateDeformation, PoleAtZ

Q_CHOICES = [2.0, -2.0, 0.5, -0.5, 1.0, 3.0]

complex_z = st.builds(lambda r, t: r * complex(math.cos(t), math.sin(t)),
                      st.floats(0, 5), st.floats(0, 2 * math.pi))


@pytest.mark.parametrize("kind,z,q,expected", [
    ("cosh", 0.0, 2.0, 1.5),
    ("sinh", 0.0, 3.0, -1.0),
    ("cosh", math.log(2), 4.0, 2.0),
    ("tanh", 0.0, 1.0, 0.0),
])
def test_spec_values(kind, z, q, expected):
    assert qd.eval_qhyperbolic(kind, z, q) == pytest.approx(expected, abs=1e-15)


def test_phase_examples():
    assert qd.phase_helper("arctan_tanh_half", 0.0, 1.0) == 0.0
    assert qd.phase_helper("arctan_sinh", 0.0, 1.0) == 0.0
    assert qd.phase_helper("arctan_sinh", 40.0, 1.0) == pytest.approx(math.pi / 2, abs=1e-15)


def test_zero_q_rejected():
    with pytest.raises(DegenerateDeformation):
        qd.cosh_q(1.0, 0)
    with pytest.raises(DegenerateDeformation):
        qd.Deformation(0.0)


def test_pole_for_negative_q():
    # cosh_q vanishes at log(-q)/2 when q < 0
    with pytest.raises(PoleAtZ) as exc:
        qd.tanh_q(np.array([-1.0, 0.0, 1.0]), -1.0)
    assert exc.value.location == 0.0
    with pytest.raises(PoleAtZ):
        qd.sech_q(0.5 * math.log(3.0), -3.0)


def test_unknown_kind():
    with pytest.raises(ValueError):
        qd.eval_qhyperbolic("coth", 0.1, 1.0)
    with pytest.raises(ValueError):
        qd.phase_helper("arcsin", 0.1, 1.0)


def test_branch_point():
    # sinh(z) = i at z = i pi/2
    with pytest.raises(BranchPoint):
        qd.phase_helper("arctan_sinh", 1j * math.pi / 2, 1.0)


@given(complex_z, st.sampled_from(Q_CHOICES))
def test_pythagorean_identity(z, q):
    c, s = qd.cosh_q(z, q), qd.sinh_q(z, q)
    assert abs(c * c - s * s - q) <= 1e-12 * max(1.0, abs(c) ** 2)


@given(complex_z, st.floats(0.05, 20.0))
def test_shift_scale(z, q):
    y = z - 0.5 * math.log(q)
    sq = math.sqrt(q)
    assert qd.cosh_q(z, q) == pytest.approx(sq * np.cosh(y), rel=1e-12, abs=1e-12)
    assert qd.sinh_q(z, q) == pytest.approx(sq * np.sinh(y), rel=1e-12, abs=1e-12)
    if abs(np.cosh(y)) > 1e-3:
        assert qd.tanh_q(z, q) == pytest.approx(np.tanh(y), rel=1e-11, abs=1e-12)


@given(st.floats(-6, 6), st.sampled_from([0.5, 1.0, 2.0, 3.0]))
def test_derivatives_match_differences(z, q):
    h = 1e-5
    num_t = (qd.tanh_q(z + h, q) - qd.tanh_q(z - h, q)) / (2 * h)
    num_s = (qd.sech_q(z + h, q) - qd.sech_q(z - h, q)) / (2 * h)
    assert qd.d_tanh_q(z, q) == pytest.approx(num_t, abs=1e-8)
    assert qd.d_sech_q(z, q) == pytest.approx(num_s, abs=1e-8)


def test_log_cosh_no_overflow():
    z = np.array([-800.0, -1.0, 0.0, 2.0, 800.0])
    out = qd.log_cosh_q(z, 2.0)
    assert np.all(np.isfinite(out))
    assert out[2] == pytest.approx(math.log(1.5))
    assert out[-1] == pytest.approx(800.0 - math.log(2.0))


def test_phase_sweep_is_continuous():
    # complex argument along a line crossing the arctan cut
    z = np.linspace(-4, 4, 801) + 0.3j
    ph = qd.phase_helper("arctan_sinh", z, 1.0)
    assert np.max(np.abs(np.diff(ph))) < 0.05


def test_phase_derivative():
    # d/dz arctan(tanh(z/2)) = sech(z)/2
    z = np.linspace(-5, 5, 2001)
    ph = qd.phase_helper("arctan_tanh_half", z, 1.0)
    d = np.gradient(ph, z[1] - z[0])
    assert np.max(np.abs(d[2:-2] - 0.5 / np.cosh(z[2:-2]))) < 1e-5


def test_deformation_object():
    d = qd.Deformation(4.0)
    assert d.center == pytest.approx(math.log(2.0))
    assert d.cosh(d.center) == pytest.approx(2.0)
    assert d.tanh(d.center) == pytest.approx(0.0, abs=1e-15)
    assert d.sech(d.center) == pytest.approx(0.5)
    assert d.sinh(d.center) == pytest.approx(0.0, abs=1e-15)
