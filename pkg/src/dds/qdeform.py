"""
q-deformed hyperbolic functions.

    cosh_q z = (e^z + q e^-z) / 2,    sinh_q z = (e^z - q e^-z) / 2,

with ``cosh_q^2 - sinh_q^2 = q``.  For real ``q > 0`` the deformation is a
shift and rescale of the ordinary functions,

    cosh_q z = sqrt(q) cosh(z - log(q)/2),

so ``z_c = log(q)/2`` plays the role of the origin.  For ``q < 0`` the
deformed cosine vanishes on the real line at ``z = log(-q)/2`` and the
derived ``tanh_q`` / ``sech_q`` have a pole there.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BranchPoint, DegenerateDeformation, PoleAtZ

KINDS = ("cosh", "sinh", "tanh", "sech")
PHASE_KINDS = ("arctan_tanh_half", "arctan_sinh")

_POLE_RTOL = 1e-13
_BRANCH_TOL = 1e-14


def _check_q(q):
    if np.any(np.asarray(q) == 0):
        raise DegenerateDeformation("deformation parameter q must be nonzero")
    return q


def _unbox(z_in, out):
    return out[()] if np.ndim(z_in) == 0 else out


def _cosh_sinh(z, q):
    ez = np.exp(z)
    qemz = q * np.exp(-z)
    return (ez + qemz) / 2, (ez - qemz) / 2


def _checked_cosh(z, q):
    c, s = _cosh_sinh(z, q)
    small = np.abs(c) < _POLE_RTOL * np.exp(np.abs(np.real(z)))
    if np.any(small):
        where = np.asarray(z)[small] if np.ndim(z) else z
        raise PoleAtZ(f"cosh_q vanishes at z={np.ravel(where)[0]!r} (q={q!r})",
                      location=np.ravel(where)[0])
    return c, s


def cosh_q(z, q):
    _check_q(q)
    z_arr = np.asarray(z)
    return _unbox(z, _cosh_sinh(z_arr, q)[0])


def sinh_q(z, q):
    _check_q(q)
    z_arr = np.asarray(z)
    return _unbox(z, _cosh_sinh(z_arr, q)[1])


def tanh_q(z, q):
    _check_q(q)
    c, s = _checked_cosh(np.asarray(z), q)
    return _unbox(z, s / c)


def sech_q(z, q):
    _check_q(q)
    c, _ = _checked_cosh(np.asarray(z), q)
    return _unbox(z, 1 / c)


def eval_qhyperbolic(kind, z, q):
    """Evaluate one of ``cosh``, ``sinh``, ``tanh``, ``sech`` (deformed).

    Parameters
    ----------
    kind : str
        Function name.
    z : complex or array_like
        Argument(s).
    q : complex
        Deformation parameter, nonzero.

    Raises
    ------
    DegenerateDeformation
        If ``q == 0``.
    PoleAtZ
        If ``cosh_q(z)`` vanishes for ``tanh`` / ``sech``.
    """
    try:
        fn = {"cosh": cosh_q, "sinh": sinh_q, "tanh": tanh_q, "sech": sech_q}[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}") from None
    return fn(z, q)


def d_tanh_q(z, q):
    """d/dz tanh_q = q sech_q^2."""
    return q * sech_q(z, q) ** 2


def d_sech_q(z, q):
    """d/dz sech_q = -sech_q tanh_q."""
    c, s = _checked_cosh(np.asarray(z), q)
    return _unbox(z, -s / c**2)


def log_cosh_q(z, q):
    """``log(cosh_q z)`` computed without overflow for real ``z`` and ``q > 0``."""
    _check_q(q)
    z_arr = np.asarray(z)
    if np.isrealobj(z_arr) and np.isreal(q) and np.real(q) > 0:
        out = np.logaddexp(z_arr, np.log(np.real(q)) - z_arr) - np.log(2.0)
    else:
        out = continuous_log(_cosh_sinh(z_arr.astype(complex), q)[0])
    return _unbox(z, out)


def continuous_log(x):
    """Complex logarithm whose imaginary part is unwrapped along a 1-D array.

    Scalars fall back to the principal branch.
    """
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1 or x.size < 2:
        return np.log(x)
    return np.log(np.abs(x)) + 1j * np.unwrap(np.angle(x))


def _arctan(w):
    w = np.asarray(w)
    if np.iscomplexobj(w) and np.any(np.abs(np.abs(w.imag) - 1) + np.abs(w.real) < _BRANCH_TOL):
        raise BranchPoint("arctan argument hits a branch point (+/- i)")
    out = np.arctan(w)
    if out.ndim == 1 and out.size > 1:
        # principal arctan jumps by pi across its cuts; remove the jumps along the sweep
        if np.iscomplexobj(out):
            out = np.unwrap(out.real, period=np.pi) + 1j * out.imag
        else:
            out = np.unwrap(out, period=np.pi)
    return out


def phase_helper(kind, z, q):
    """Phase functions appearing in the closed-form eigenfunctions.

    ``arctan_tanh_half`` returns ``arctan(tanh_q(z/2))`` and ``arctan_sinh``
    returns ``arctan(sinh_q z)``.  A 1-D array argument is treated as a sweep
    and the result is made continuous along it.

    Raises
    ------
    BranchPoint
        If the arctan argument equals ``+/- i``.
    """
    _check_q(q)
    z_arr = np.asarray(z)
    if kind == "arctan_tanh_half":
        c, s = _checked_cosh(z_arr / 2, q)
        w = s / c
    elif kind == "arctan_sinh":
        w = _cosh_sinh(z_arr, q)[1]
    else:
        raise ValueError(f"unknown kind {kind!r}; expected one of {PHASE_KINDS}")
    return _unbox(z, _arctan(w))


@dataclass(frozen=True)
class Deformation:
    """A nonzero deformation parameter with the four deformed functions bound."""

    q: complex

    def __post_init__(self):
        _check_q(self.q)

    @property
    def center(self):
        """Symmetry center ``log(q)/2`` (principal log)."""
        if np.isreal(self.q) and np.real(self.q) > 0:
            return 0.5 * float(np.log(np.real(self.q)))
        return 0.5 * complex(np.log(complex(self.q)))

    def cosh(self, z):
        return cosh_q(z, self.q)

    def sinh(self, z):
        return sinh_q(z, self.q)

    def tanh(self, z):
        return tanh_q(z, self.q)

    def sech(self, z):
        return sech_q(z, self.q)
