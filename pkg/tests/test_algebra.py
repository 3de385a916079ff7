import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dds import algebra as alg
from dds import scarf as sc
from dds.errors import DegenerateR2, DifferentiationNoise, InconsistentMatch, OutOfLadder

Z = np.linspace(-6, 6, 801)


def test_structure_relations():
    r = alg.plain_realization(2.0, 0.7)
    res = alg.structure_residuals(r, Z)
    assert res["F_closing"] < 1e-14 and res["G_closing"] < 1e-14
    # the opposite signs are not satisfied by tanh_q, i B1 sech_q
    assert res["F_printed"] > 1.0 and res["G_printed"] > 0.1


@given(st.floats(0.3, 3.0), st.floats(-2, 2), st.floats(-1, 3), st.floats(-0.5, 0.5),
       st.integers(0, 2**32 - 1))
def test_commutators_plain(q, B1, mu_re, mu_im, seed):
    mu = complex(mu_re, mu_im)
    r = alg.plain_realization(q, B1)
    states = alg.random_test_states(mu, Z, 3, np.random.default_rng(seed))
    res = alg.algebra_residuals(r, mu, states)
    assert max(res["commutator_pm"], res["commutator_3p"], res["commutator_3m"]) <= 1e-8
    assert res["casimir_hamiltonian"] <= 1e-8


@given(st.floats(0.3, 3.0), st.floats(0.8, 3.0), st.integers(0, 2**32 - 1))
def test_commutators_restricted(q, mu, seed):
    r1 = 1.0
    r2 = -1j * r1 / np.sqrt(q)
    r = alg.restricted_realization(r1, r2, mu)
    assert r.params["q"] == pytest.approx(q)
    states = alg.random_test_states(mu, Z, 3, np.random.default_rng(seed))
    res = alg.algebra_residuals(r, mu, states)
    assert max(res["commutator_pm"], res["commutator_3p"], res["commutator_3m"]) <= 1e-8
    assert res["casimir_hamiltonian"] <= 1e-8
    assert res["compatibility"] <= 1e-10


def test_restrictions_zero_numerators():
    r1, r2, mu = 1.0, -1j / np.sqrt(2.0), 1.7
    S1, q, B1 = alg.closure_restrictions(r1, r2, mu)
    assert max(abs(c) for c in alg.derived_numerators(S1, B1, q, r1, r2, mu)) < 1e-14
    S1p, qp, B1p = alg.restrict_parameters(r1, r2, mu)
    assert max(abs(c) for c in alg.printed_numerators(S1p, B1p, qp, r1, r2, mu)) < 1e-14
    assert max(abs(c) for c in alg.derived_numerators(S1p, B1p, qp, r1, r2, mu)) > 1.0
    with pytest.raises(DegenerateR2):
        alg.restrict_parameters(1.0, 0.0, mu)
    with pytest.raises(DegenerateR2):
        alg.closure_restrictions(1.0, 0.0, mu)


def test_restricted_casimir_coefficients():
    r1, r2, mu = 1.0, -1j / np.sqrt(2.0), 1.7
    r = alg.restricted_realization(r1, r2, mu)
    q, B1 = r.params["q"], r.params["B1"]
    c0, cst, cs2, misfit = sc.scarf_coefficients(lambda z: alg.casimir_potential(mu, r, z), q)
    assert misfit < 1e-10
    assert np.allclose([c0, cst, cs2], alg.restricted_casimir_coefficients(mu, q, B1), atol=1e-10)


def test_solve_s2():
    s2, res = alg.solve_s2(1.0, -1j / np.sqrt(2.0), 1.7, Z)
    assert s2 == 0 and res < 1e-10


@pytest.mark.parametrize("name", ["scarf-q1", "scarf-q2"])
def test_casimir_reproduces_partner(name):
    from dds import pipeline as pl
    case = pl.get_case(name)
    mu, r, z = pl.algebra_setup(case)
    diff = case.pair.v_minus(z) - alg.casimir_potential(mu, r, z)
    assert np.max(np.abs(diff - case.ext.C1**2)) < 1e-10
    assert r.params["q"] == pytest.approx(case.params.q)


def test_eq38_energy():
    lv = alg.eq38_energy(2.0, 1.5, 1)
    assert lv.e_squared == pytest.approx(2.0 * (0.25 - 1.5) - 1.0)
    with pytest.raises(OutOfLadder):
        alg.eq38_energy(2.0, 1.5, 2)
    with pytest.raises(OutOfLadder):
        alg.eq38_energy(2.0, 1.5, -1)


@pytest.mark.parametrize("name", ["scarf-q1", "scarf-q2"])
def test_concordance(name):
    from dds import pipeline as pl
    case = pl.get_case(name)
    sp = case.spectrum
    c = alg.concordance(sp.lambda1, sp.constant, sp.n_max)
    assert c["max_diff"] <= 1e-8
    assert c["mu"] == pytest.approx(sp.lambda1 - 0.5)


def test_concordance_impossible():
    # mu = 1/4 makes q(1/4 - mu) vanish, so a nonzero constant cannot be reached
    with pytest.raises(InconsistentMatch):
        alg.concordance(0.75, 1.0, 0)


def test_bare_function_differentiation():
    s = alg.AlgebraState(1.0, Z, (np.exp(-Z**2),))
    out = alg.apply_generator("Jplus", s, alg.plain_realization())
    assert out.order == 0 and np.all(np.isfinite(out.f))
    noisy = alg.AlgebraState(1.0, Z, (np.exp(-Z**2) + 1e-3 * np.random.default_rng(0).standard_normal(Z.size),))
    with pytest.raises(DifferentiationNoise):
        alg.apply_generator("Jminus", noisy, alg.plain_realization())
    with pytest.raises(ValueError):
        alg.apply_generator("J4", s, alg.plain_realization())


@given(st.floats(-0.4, 5))
def test_infer_j(c):
    j = alg.infer_j(c)
    assert j * (j + 1) == pytest.approx(c, abs=1e-12)


@pytest.mark.parametrize("name", ["scarf-q1", "scarf-q2"])
def test_ladder_on_ground_state(name):
    from dds import pipeline as pl
    case = pl.get_case(name)
    lad = pl.ladder_diagnostics(case)
    mu = complex(case.spectrum.lambda1 + 0.5)
    assert lad["j"] == pytest.approx(mu - 1)
    # the lowering coefficient vanishes for j = mu - 1, the realized J- does not
    assert lad["minus"]["coefficient"] == pytest.approx(0.0, abs=1e-12)
    assert lad["minus"]["ratio"] == pytest.approx(abs(2 * mu - 1), rel=1e-6)
