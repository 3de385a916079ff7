import cmath

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dds.jacobi import jacobi, jacobi_derivative, jacobi_sum

def mp_jacobi(n, a, b, x):
    """High-precision explicit sum; also returns the sum of term moduli."""
    with mpmath.workdps(50):
        a, b, x = mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(x)
        terms = [mpmath.binomial(n + a, m) * mpmath.binomial(n + b, n - m)
                 * ((x - 1) / 2) ** (n - m) * ((x + 1) / 2) ** m for m in range(n + 1)]
        return complex(mpmath.fsum(terms)), float(mpmath.fsum(abs(t) for t in terms))


disc = st.builds(lambda r, t: r * cmath.exp(1j * t), st.floats(0, 3), st.floats(0, 2 * cmath.pi))


def test_examples():
    assert jacobi(0, 0.3 + 1j, -2.0, 7.0) == 1
    assert jacobi(1, 1.0, 0.0, 0.5) == pytest.approx(1.25)
    a, b, x = 1j, -1j, 0.3j
    assert abs(jacobi(2, a, b, x) - jacobi_sum(2, a, b, x)) <= 1e-12 * max(1, abs(jacobi_sum(2, a, b, x)))


def test_negative_degree():
    with pytest.raises(ValueError):
        jacobi(-1, 0.0, 0.0, 0.1)


@given(st.integers(0, 12), disc, disc, disc)
def test_recurrence_matches_mpmath(n, a, b, x):
    ref, scale = mp_jacobi(n, a, b, x)
    assert abs(jacobi(n, a, b, x) - ref) <= 1e-12 * max(1.0, scale)


@given(st.integers(0, 12), disc, disc, disc)
def test_sum_matches_recurrence(n, a, b, x):
    # near a root both evaluations are limited by cancellation among the terms
    _, scale = mp_jacobi(n, a, b, x)
    assert abs(jacobi(n, a, b, x) - jacobi_sum(n, a, b, x)) <= 1e-12 * max(1.0, scale)


def test_degenerate_recurrence_denominator():
    # alpha + beta = -2 makes the k = 1 denominator vanish
    for n in range(6):
        assert jacobi(n, -0.5, -1.5, 0.4) == pytest.approx(mp_jacobi(n, -0.5, -1.5, 0.4)[0], rel=1e-12, abs=1e-14)


def test_legendre_special_case():
    x = np.linspace(-1, 1, 11)
    for n in range(6):
        leg = np.polynomial.legendre.Legendre.basis(n)(x)
        assert np.allclose([jacobi(n, 0, 0, xi) for xi in x], leg, atol=1e-13)


@given(st.integers(1, 10), disc, disc, st.floats(-0.9, 0.9))
def test_derivative(n, a, b, x):
    h = 1e-6
    num = (jacobi(n, a, b, x + h) - jacobi(n, a, b, x - h)) / (2 * h)
    d = jacobi_derivative(n, a, b, x)
    assert abs(d - num) <= 1e-5 * max(1.0, abs(d))
