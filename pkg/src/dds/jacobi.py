"""Jacobi polynomials with complex parameters and argument."""
from __future__ import annotations

import numpy as np

_DEN_TOL = 1e-10


def _binom(a, m):
    """Generalized binomial ``C(a, m)`` for complex ``a`` and integer ``m >= 0``."""
    out = 1.0 + 0j
    for i in range(m):
        out *= (a - i) / (i + 1)
    return out


def jacobi_sum(n, alpha, beta, x):
    """Explicit finite sum

        P_n^(a,b)(x) = sum_m C(n+a, m) C(n+b, n-m) ((x-1)/2)^(n-m) ((x+1)/2)^m.

    Valid for all complex ``alpha``, ``beta``; used as the fallback when the
    recurrence degenerates.
    """
    x = np.asarray(x, dtype=complex)
    xm = (x - 1) / 2
    xp = (x + 1) / 2
    out = np.zeros_like(x)
    for m in range(n + 1):
        out = out + _binom(n + alpha, m) * _binom(n + beta, n - m) * xm ** (n - m) * xp**m
    return out


def _recurrence_ok(n, a, b):
    for k in range(2, n + 1):
        s = 2 * k + a + b
        if abs(2 * k * (k + a + b) * (s - 2)) < _DEN_TOL:
            return False
    return True


def jacobi(n, alpha, beta, x):
    """Jacobi polynomial ``P_n^(alpha, beta)(x)`` by the three-term recurrence.

    Parameters
    ----------
    n : int
        Degree, ``n >= 0``.
    alpha, beta : complex
        Parameters.
    x : complex or array_like
        Argument(s).

    Returns
    -------
    complex or ndarray

    Notes
    -----
    Falls back to :func:`jacobi_sum` when a leading recurrence coefficient
    ``2k(k+a+b)(2k+a+b-2)`` is smaller than 1e-10 in modulus.
    """
    if int(n) != n or n < 0:
        raise ValueError("degree must be a non-negative integer")
    n = int(n)
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=complex)
    a, b = complex(alpha), complex(beta)
    if n == 0:
        out = np.ones_like(x)
    elif not _recurrence_ok(n, a, b):
        out = jacobi_sum(n, a, b, x)
    else:
        p0 = np.ones_like(x)
        p1 = (a + 1) + (a + b + 2) * (x - 1) / 2
        for k in range(2, n + 1):
            s = 2 * k + a + b
            c0 = 2 * k * (k + a + b) * (s - 2)
            c1 = (s - 1) * (s * (s - 2) * x + a * a - b * b)
            c2 = 2 * (k + a - 1) * (k + b - 1) * s
            p0, p1 = p1, (c1 * p1 - c2 * p0) / c0
        out = p1
    return out[()] if scalar else out


def jacobi_derivative(n, alpha, beta, x):
    """``d/dx P_n^(a,b)(x) = (n+a+b+1)/2 P_{n-1}^(a+1,b+1)(x)``."""
    if n == 0:
        return np.zeros_like(np.asarray(x, dtype=complex))[()]
    return 0.5 * (n + alpha + beta + 1) * jacobi(n - 1, alpha + 1, beta + 1, x)
