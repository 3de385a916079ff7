import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dds import qdeform as qd
from dds import scarf as sc
from dds.errors import (DegenerateDenominator, DegenerateExtension, OutOfLadder, PoleOnGrid,
                        ZeroModeIntertwine)
from dds.grid import GridSpec
from dds.susy import eigen_residual


def test_effective_potential_origin():
    p = sc.ModelParams(e=0.0, k=1.0, K1=2.0, K2=0.0, q=1.0)
    assert sc.effective_potential("B", p, 0.0) == pytest.approx(-2.0)
    assert sc.effective_potential("A", p, 0.0) == pytest.approx(2.0)


def test_effective_potential_direct():
    p = sc.ModelParams(e=1.0, k=1.0, K1=1.0, K2=1.0, q=1.0)
    z = 1.0
    w = 1j * (p.e * p.K2 / np.cosh(z) - 1j * p.k * p.K1 * np.tanh(z))
    dw = 1j * (-p.e * p.K2 * np.tanh(z) / np.cosh(z) - 1j * p.k * p.K1 / np.cosh(z) ** 2)
    assert sc.effective_potential("B", p, z) == pytest.approx(w * w - dw, abs=1e-14)
    assert sc.effective_potential("A", p, z) == pytest.approx(w * w + dw, abs=1e-14)


nonzero = st.floats(0.1, 3) | st.floats(-3, -0.1)


@given(nonzero, st.floats(-3, 3), st.floats(-3, 3), st.floats(0.2, 4), st.floats(-4, 4))
def test_effective_potential_coefficients(K1, K2, e, q, z):
    p = sc.ModelParams(e=e, k=1.0, K1=K1, K2=K2, q=q)
    c0, cst, cs2 = sc.effective_potential_coefficients("B", p)
    s, t = qd.sech_q(z, q), qd.tanh_q(z, q)
    # tanh_q^2 = 1 - q sech_q^2 folds the tanh^2 term into the basis
    assert sc.effective_potential("B", p, z) == pytest.approx(c0 + cst * s * t + cs2 * s * s, abs=1e-10)


def test_resolve_extension_examples():
    ext = sc.resolve_extension(1.0, 1.0, "upper")
    assert (ext.C1, ext.C3, ext.r2) == (pytest.approx(-0.5), pytest.approx(-1j), pytest.approx(-1j))
    assert max(abs(k) for k in sc.printed_numerator_constants(ext)) == 0
    ext = sc.resolve_extension(0.0, 1.0, "upper")
    assert (ext.C1, ext.C3, ext.r2) == (pytest.approx(0.5), pytest.approx(1j), pytest.approx(-1j))
    with pytest.raises(DegenerateExtension):
        sc.resolve_extension(1.0, 0.0, "upper")


@given(st.floats(-3, 3), st.floats(0.2, 3), st.sampled_from(["upper", "lower"]), st.floats(0.2, 4))
def test_extension_cancels_rational_term(c2, r1, branch, q):
    ext = sc.resolve_extension(c2, r1, branch, q)
    assert max(abs(a) for a in sc.numerator_coefficients(ext)) <= 1e-12 * max(1, abs(r1))
    # W2^2 - W2' is then exactly of Scarf form
    *_, misfit = sc.scarf_coefficients(sc.extended_pair(ext)[1].v_minus, q)
    assert misfit < 1e-10


def test_pair_sum_rule_and_limit():
    ext = sc.resolve_extension(0.3, 1.0, "upper", 1.0)
    w2, pair = sc.extended_pair(ext)
    z = np.linspace(-5, 5, 41)
    assert np.allclose(pair.v_minus(z) + pair.v_plus(z), 2 * w2.value(z) ** 2)
    assert pair.v_minus(40.0) == pytest.approx(0.25 * (1 - 2 * 0.3) ** 2, abs=1e-12)
    w2.validate(z)


def test_pole_on_grid():
    # real r2 puts the zero of r1 + r2 sinh z on the real line
    ext = sc.ScarfExtension(0.5, 0.0, 1.0, 1.0, 1.0, sc.Branch.UPPER, 1.0)
    with pytest.raises(PoleOnGrid):
        sc.extended_pair(ext, GridSpec(-np.arcsinh(1.0) - 1.0, -np.arcsinh(1.0) + 1.0, 201))


def test_match_degenerate_denominator():
    with pytest.raises(DegenerateDenominator):
        sc.match_model_parameters(1.0, 1.0, 1.0, "upper")


@pytest.mark.parametrize("q", [1.0, 2.0])
def test_match_model_parameters(q):
    m = sc.match_model_parameters(2.0, 1.0, q, "upper")
    assert m.K2 == pytest.approx(1 + m.C2)
    assert m.residual < 1e-10
    assert np.isfinite(m.printed_residual)
    res = sc.matching_residuals(m.K1, m.C2, 2.0, 1.0, q, "upper")
    assert np.max(np.abs(res)) < 1e-10


def test_printed_footnote_radicand():
    p = sc.ModelParams(e=1.0, k=1.0, K1=1.0, K2=1.0, q=1.0)
    assert sc.printed_footnote_radicand(p) == pytest.approx(21.0)


def test_spectrum_examples():
    sp = sc.ScarfSpectrumParams.from_values(2.5, 0.0, 9.0)
    assert [lv.e_squared for lv in sc.analytic_levels(sp)] == pytest.approx([2.75, 6.75, 8.75])
    assert sp.n_max == 2
    with pytest.raises(OutOfLadder):
        sc.analytic_spectrum(sp, 3)
    with pytest.raises(OutOfLadder):
        sc.analytic_spectrum(sp, 2, partner=True)
    assert sc.analytic_spectrum(sp, 1, partner=True).e_squared == pytest.approx(8.75)
    z0 = sc.ScarfSpectrumParams.from_values(2.5, 0.0, 6.25)
    assert sc.analytic_spectrum(z0, 0).energy == 0


def test_no_phase_when_lambda2_zero():
    sp = sc.ScarfSpectrumParams.from_values(1.5, 0.0, 4.0)
    z = np.linspace(-3, 3, 61)
    psi = sc.minus_state(0, sp, z)
    assert np.max(np.abs(psi.imag)) < 1e-15
    assert np.allclose(psi, 1 / np.cosh(z) ** 1.5)


def test_ground_w1_at_origin():
    for q in (1.0, 2.0, 0.5):
        p = sc.ModelParams(e=0.0, k=1.0, K1=1.5, K2=0.0, q=q)
        assert sc.ground_w1(p, 0.0) == pytest.approx(((1 + q) / 2) ** 1.5)


@pytest.mark.parametrize("q", [1.0, 2.0])
def test_minus_zero_shape(q):
    sp = sc.ScarfSpectrumParams.from_values(1.7, 0.4, 4.0, q=q)
    z = sp.center + np.linspace(-4, 4, 81)
    y = z - 0.5 * math.log(q)
    ref = (1 / np.cosh(y)) ** 1.7 * np.exp(-0.4j * np.arctan(np.sinh(y)))
    assert np.max(np.abs(sc.minus_state(0, sp, z) - ref)) < 1e-12


@pytest.mark.parametrize("name", ["scarf-q1", "scarf-q2"])
def test_eigenfunction_residuals(name):
    from dds import pipeline as pl
    case = pl.get_case(name)
    g = GridSpec.symmetric(case.spectrum.center, 12.0, 4001)
    for lv in case.analytic_levels():
        f = sc.eigenfunction_field("minus_n", lv.n, case.params, case.spectrum, g, case.ext)
        assert eigen_residual(case.pair.v_minus, f, lv.e_squared) <= 1e-5
        assert eigen_residual(lambda z: sc.effective_potential("B", case.params, z), f, lv.e_squared) <= 1e-5
    for n in range(2, case.spectrum.n_max + 2):
        f = sc.eigenfunction_field("plus_n", n, case.params, case.spectrum, g, case.ext)
        e2 = sc.analytic_spectrum(case.spectrum, n - 1).e_squared
        assert eigen_residual(case.pair.v_plus, f, e2) <= 1e-5
    with pytest.raises(ZeroModeIntertwine):
        sc.eigenfunction("plus_n", 1, case.params, case.spectrum, g.points, case.ext)


@pytest.mark.parametrize("q", [1.0, 2.0, 0.5])
def test_pt_symmetry(q):
    ext = sc.resolve_extension(-0.7, 1.0, "upper", q)
    _, pair = sc.extended_pair(ext)
    zc = 0.5 * math.log(q)
    t = np.linspace(0, 6, 61)
    assert sc.pt_defect(pair.v_minus, zc, t) < 1e-12


def test_shape_of_w2():
    ext = sc.resolve_extension(-0.7, 1.3, "upper", 2.0)
    A, B = sc.shape_of_w2(ext)
    z = np.linspace(-3, 4, 15)
    y = z - 0.5 * math.log(2.0)
    w2 = sc.w2_superpotential(ext).value(z)
    assert np.allclose(w2, A * np.tanh(y) + 1j * B / np.cosh(y), atol=1e-12)
