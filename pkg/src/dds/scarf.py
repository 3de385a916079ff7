"""
Deformed PT-symmetric Scarf II model and its rational extension.

Conventions
-----------
The model superpotential is ``W1 = i e K2 sech_q z + k K1 tanh_q z`` and the
effective potentials are ``U_B = W1^2 - W1'`` and ``U_A = W1^2 + W1'``.  All
potentials here are built from superpotentials with analytic derivatives;
the printed closed forms live in :mod:`dds.deviations` and are only compared
against.

For real ``q > 0`` every deformed Scarf potential becomes an ordinary one in
``y = z - log(q)/2`` since ``sech_q z = sech(y)/sqrt(q)`` and
``tanh_q z = tanh(y)``.  Spectra and eigenfunctions are therefore written in
``y``.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import optimize

from . import qdeform as qd
from .errors import (DegenerateDenominator, DegenerateExtension, InconsistentMatch,
                     NoRealSolution, OutOfLadder, PoleOnGrid, ZeroModeIntertwine)
from .grid import ComplexGridField, GridSpec
from .jacobi import jacobi, jacobi_derivative
from .susy import PartnerPair, Superpotential, partner_potentials

log = logging.getLogger(__name__)

_POLE_TOL = 1e-10
_MATCH_TOL = 1e-8


class Branch(enum.Enum):
    """Upper / lower choice of the paired signs.

    ``UPPER`` takes the upper sign of every ``-/+`` (i.e. ``-``) and of every
    ``+/-`` (i.e. ``+``).
    """

    UPPER = "upper"
    LOWER = "lower"

    @property
    def sign(self):
        return 1 if self is Branch.UPPER else -1

    @classmethod
    def parse(cls, b):
        if isinstance(b, cls):
            return b
        try:
            return cls(str(b).lower())
        except ValueError:
            raise ValueError(f"branch must be 'upper' or 'lower', got {b!r}") from None


@dataclass(frozen=True)
class ModelParams:
    """Dirac-system inputs; ``V_F = K1 tanh_q z`` and ``A = K2 sech_q z``."""

    e: float
    k: float
    K1: float
    K2: float
    q: complex = 1.0
    k2_coupled: bool = False  # True when K2 was fixed as 1 + C2

    def __post_init__(self):
        if self.K1 == 0:
            raise ValueError("K1 must be nonzero")
        qd.Deformation(self.q)


def superpotential_w1(p: ModelParams) -> Superpotential:
    a = 1j * p.e * p.K2
    b = p.k * p.K1

    def w(z):
        return a * qd.sech_q(z, p.q) + b * qd.tanh_q(z, p.q)

    def dw(z):
        s = qd.sech_q(z, p.q)
        return -a * s * qd.tanh_q(z, p.q) + b * p.q * s**2

    return Superpotential(w, dw, "W1")


def effective_potential(component, p: ModelParams, z):
    """``U_A = W1^2 + W1'`` or ``U_B = W1^2 - W1'``."""
    w = superpotential_w1(p)
    if component == "A":
        return w.value(z) ** 2 + w.derivative(z)
    if component == "B":
        return w.value(z) ** 2 - w.derivative(z)
    raise ValueError("component must be 'A' or 'B'")


def effective_potential_coefficients(component, p: ModelParams):
    """Exact ``(const, sech*tanh, sech^2)`` coefficients of ``U_A`` / ``U_B``.

    ``tanh_q^2`` is rewritten as ``1 - q sech_q^2``.
    """
    sgn = {"A": 1, "B": -1}[component]
    ek, kk, q = p.e * p.K2, p.k * p.K1, p.q
    c0 = kk**2
    cst = 1j * ek * (2 * kk - sgn)
    cs2 = -(ek**2 - sgn * q * kk + q * kk**2)
    return c0, cst, cs2


# --------------------------------------------------------------------------
# rational extension
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ScarfExtension:
    """Parameters of ``W2 = C1 tanh_q + i C2 sech_q + C3 cosh_q / (r1 + r2 sinh_q)``."""

    C1: complex
    C2: complex
    C3: complex
    r1: complex
    r2: complex
    branch: Branch
    q: complex = 1.0


def resolve_extension(c2, r1, branch, q=1.0) -> ScarfExtension:
    """Fix ``C1``, ``C3`` and ``r2`` so the rational numerator vanishes.

    With ``s = +1`` (upper) or ``-1`` (lower)::

        r2 = -s i r1 / sqrt(q),   C1 = (1 - 2 s C2 / sqrt(q)) / 2,   C3 = -2 C1 r2

    which for ``q = 1`` reads ``C1 = (1 -/+ 2 C2)/2``,
    ``C3 = -i(-/+ r1 + 2 C2 r1)``, ``r2 = -/+ i r1``.

    Raises
    ------
    DegenerateExtension
        If ``r1 == 0``.
    """
    branch = Branch.parse(branch)
    if r1 == 0:
        raise DegenerateExtension("r1 must be nonzero")
    qd.Deformation(q)
    s = branch.sign
    sq = np.sqrt(complex(q)) if not (np.isreal(q) and np.real(q) > 0) else math.sqrt(float(np.real(q)))
    if sq == 1:
        # keep the q = 1 formulas literal so the cancellation is exact to rounding
        r2 = -s * 1j * r1
        C1 = 0.5 * (1 - s * 2 * c2)
        C3 = -1j * (-s * r1 + 2 * c2 * r1)
    else:
        r2 = -s * 1j * r1 / sq
        C1 = 0.5 * (1 - 2 * s * c2 / sq)
        C3 = -2 * C1 * r2
    return ScarfExtension(C1, c2, C3, r1, r2, branch, q)


def numerator_coefficients(ext: ScarfExtension):
    """Coefficients of ``cosh_q^2``, ``sinh_q`` and ``1`` in the rational numerator.

    ``W2^2 - W2'`` equals the Scarf part plus
    ``C3 (a_cosh2 cosh_q^2 + a_sinh sinh_q + a_1) / (r1 + r2 sinh_q)^2``.
    """
    C1, C2, C3, r1, r2, q = ext.C1, ext.C2, ext.C3, ext.r1, ext.r2, ext.q
    a_cosh2 = C3 + 2 * C1 * r2
    a_sinh = 2 * C1 * r1 + 2j * C2 * r2 - r1
    a_1 = 2j * C2 * r1 + q * r2 * (1 - 2 * C1)
    return a_cosh2, a_sinh, a_1


def printed_numerator_constants(ext: ScarfExtension):
    """The three numerator constants in their published ``q = 1`` form."""
    C1, C2, C3, r1, r2 = ext.C1, ext.C2, ext.C3, ext.r1, ext.r2
    k1 = C3 + 4j * C2 * r1 + 2 * r2 - 2 * C1 * r2
    k2 = C3 + 2 * C1 * r2
    k3 = -2 * r1 + 4 * C1 * r1 + 4j * C2 * r2
    return k1, k2, k3


def w2_superpotential(ext: ScarfExtension) -> Superpotential:
    C1, C2, C3, r1, r2, q = ext.C1, ext.C2, ext.C3, ext.r1, ext.r2, ext.q

    def w(z):
        c, s = qd.cosh_q(z, q), qd.sinh_q(z, q)
        return C1 * s / c + 1j * C2 / c + C3 * c / (r1 + r2 * s)

    def dw(z):
        c, s = qd.cosh_q(z, q), qd.sinh_q(z, q)
        d = r1 + r2 * s
        return C1 * q / c**2 - 1j * C2 * s / c**2 + C3 * (r1 * s - q * r2) / d**2

    return Superpotential(w, dw, "W2")


def rational_poles(ext: ScarfExtension, z):
    """Grid points where ``r1 + r2 sinh_q z`` (relative to its scale) vanishes."""
    z = np.asarray(z)
    d = ext.r1 + ext.r2 * qd.sinh_q(z, ext.q)
    scale = abs(ext.r1) + abs(ext.r2) * np.abs(qd.cosh_q(z, ext.q))
    return z[np.abs(d) < _POLE_TOL * scale]


def extended_pair(ext: ScarfExtension, grid: GridSpec | None = None):
    """``W2`` and its partner pair.

    Raises
    ------
    PoleOnGrid
        If the rational denominator vanishes at a point of ``grid``.
    """
    if grid is not None:
        bad = rational_poles(ext, grid.points)
        if bad.size:
            raise PoleOnGrid(f"r1 + r2 sinh_q z vanishes near z={bad[0]:.6g}", location=float(bad[0]))
    w2 = w2_superpotential(ext)
    return w2, partner_potentials(w2)


def scarf_coefficients(v, q, z=None):
    """Least-squares fit of ``v`` onto ``{1, sech_q tanh_q, sech_q^2}``.

    Returns ``(const, c_st, c_s2, max_abs_misfit)``.  A small misfit means
    ``v`` is exactly of deformed Scarf II form.
    """
    if z is None:
        zc = _center(q)
        z = zc + np.linspace(-4.0, 4.0, 41)
    z = np.asarray(z, dtype=float)
    s, t = qd.sech_q(z, q), qd.tanh_q(z, q)
    basis = np.stack([np.ones_like(s), s * t, s * s], axis=1).astype(complex)
    vals = np.asarray(v(z), dtype=complex)
    coef, *_ = np.linalg.lstsq(basis, vals, rcond=None)
    misfit = float(np.max(np.abs(basis @ coef - vals)))
    return complex(coef[0]), complex(coef[1]), complex(coef[2]), misfit


def _center(q):
    if np.isreal(q) and np.real(q) > 0:
        return 0.5 * math.log(float(np.real(q)))
    return 0.0


# --------------------------------------------------------------------------
# parameter matching
# --------------------------------------------------------------------------

class ParameterMatch(NamedTuple):
    K1: float
    C2: float
    K2: float
    residual: float
    printed_K1: complex
    printed_C2: complex
    printed_residual: float
    used_fallback: bool
    solutions: tuple


def printed_match_candidates(e, k, q):
    """The published closed-form candidates for ``(K1, C2)``."""
    den = 2 * (e**2 - 1) * k * (e**2 - q)
    if den == 0:
        raise DegenerateDenominator("2(e^2 - 1) k (e^2 - q) vanishes")
    disc = -8 * (e**2 - 1) * (-1 + 2 * e**2 - k) * (e**2 - q) + 4 * (2 * e**3 + k + e * (q - 1) - q) ** 2
    root = np.sqrt(complex(disc))
    K1 = (e * (1 + e) - 2 * e**3 - e**4 - k + e * q * (e - 1) + 0.5 * root) / den
    C2 = (e**2 * (1 - 2 * e**2 + e * (q - k)) - e**2 * q + 0.5 * e * root) / den
    return complex(K1), complex(C2)


def matching_residuals(K1, C2, e, k, q, branch):
    """Coefficient differences ``U_B - V_-^(2)`` in the basis (1, sech tanh, sech^2)."""
    branch = Branch.parse(branch)
    p = ModelParams(e, k, K1, 1 + C2, q, k2_coupled=True)
    ub = effective_potential_coefficients("B", p)
    vm = minus_partner_coefficients(C2, branch, q)
    return np.array([ub[i] - vm[i] for i in range(3)])


def minus_partner_coefficients(c2, branch, q):
    """Exact ``(const, sech tanh, sech^2)`` coefficients of ``V_-^(2)``."""
    ext = resolve_extension(c2, 1.0, branch, q)
    C1 = ext.C1
    return C1**2, 1j * (2 * C1 + 1) * c2, -(q * C1 + c2**2 + q * C1**2)


def match_model_parameters(e, k, q, branch, tol=_MATCH_TOL) -> ParameterMatch:
    """Match ``U_B`` to ``V_-^(2)`` with ``K2 = 1 + C2``.

    The published candidates are tried first; if their residual exceeds
    ``tol`` a least-squares root search over real ``(K1, C2)`` is run from
    the candidates and a grid of seeds.  Among converged roots the one
    closest to ``(k K1, e K2) = (C1, C2)`` is returned.

    Raises
    ------
    DegenerateDenominator
        If ``2(e^2 - 1) k (e^2 - q) == 0``.
    NoRealSolution
        If no real root is found.
    """
    branch = Branch.parse(branch)
    pK1, pC2 = printed_match_candidates(e, k, q)
    try:
        pres = float(np.max(np.abs(matching_residuals(pK1, pC2, e, k, q, branch))))
    except (ValueError, ZeroDivisionError):
        pres = np.inf
    printed_real = abs(pK1.imag) < 1e-12 and abs(pC2.imag) < 1e-12
    if printed_real and pres <= tol:
        return ParameterMatch(pK1.real, pC2.real, 1 + pC2.real, pres, pK1, pC2, pres, False, ((pK1.real, pC2.real),))

    def fun(x):
        r = matching_residuals(x[0], x[1], e, k, q, branch)
        return np.concatenate([r.real, r.imag])

    seeds = [(pK1.real, pC2.real)]
    if e != 1:
        c2s = e / (1 - e)
        c1s = resolve_extension(c2s, 1.0, branch, q).C1
        seeds.append((np.real(c1s) / k, c2s))
    seeds += [(a, b) for a in np.linspace(-4, 4, 9) for b in np.linspace(-4, 4, 9) if a != 0]
    found = []
    for x0 in seeds:
        if not np.all(np.isfinite(x0)) or x0[0] == 0:
            continue
        try:
            sol = optimize.least_squares(fun, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=400)
        except (ValueError, ZeroDivisionError):
            continue
        res = float(np.max(np.abs(fun(sol.x))))
        if res <= tol and sol.x[0] != 0:
            if not any(np.allclose(sol.x, f, atol=1e-7) for f in found):
                found.append(tuple(sol.x))
    if not found:
        raise NoRealSolution(f"no real (K1, C2) matches for e={e}, k={k}, q={q}")

    def score(x):
        K1, C2 = x
        C1 = resolve_extension(C2, 1.0, branch, q).C1
        return abs(k * K1 - C1) + abs(e * (1 + C2) - C2)

    K1, C2 = min(found, key=score)
    res = float(np.max(np.abs(matching_residuals(K1, C2, e, k, q, branch))))
    log.info("published match residual %.3g; root search gave K1=%.12g C2=%.12g", pres, K1, C2)
    return ParameterMatch(float(K1), float(C2), 1 + float(C2), res, pK1, pC2, pres, True, tuple(found))


# --------------------------------------------------------------------------
# spectrum
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ScarfSpectrumParams:
    """Scarf II data in shifted coordinates: ``E_n^2 = constant - (lambda1 - n)^2``."""

    lambda1: complex
    lambda2: complex
    n_max: int
    constant: complex
    q: complex = 1.0
    branch: Branch | None = None
    c2: complex | None = None
    printed_lambda1: complex | None = None
    radicands: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_values(cls, lambda1, lambda2, constant, q=1.0, branch=None, c2=None):
        return cls(lambda1, lambda2, ladder_top(lambda1, constant), constant, q, branch, c2)

    @property
    def center(self):
        return _center(self.q)


def ladder_top(lambda1, constant):
    """Largest ``n < Re lambda1`` with ``Re(constant - (lambda1 - n)^2) > 0``; -1 if none."""
    top = -1
    n = 0
    while n < np.real(lambda1):
        if np.real(constant - (lambda1 - n) ** 2) > 0:
            top = n
        n += 1
    return top


def lambdas_from_coefficients(c_st, c_s2, q):
    """Solve ``(l1 + 1/2 +- l2)^2 = V1 + 1/4 +- V2`` for the bound-state root.

    Here ``V1 = -c_s2/q`` and ``V2 = c_st/(i sqrt q)`` are the ``sech^2`` and
    ``sech tanh`` strengths in shifted coordinates.  Of the four roots the
    one with the largest ``Re lambda1`` is returned.
    """
    sq = np.sqrt(complex(q))
    v1 = -c_s2 / q
    v2 = c_st / (1j * sq)
    rp = np.sqrt(complex(v1 + 0.25 + v2))
    rm = np.sqrt(complex(v1 + 0.25 - v2))
    cands = []
    for a in (rp, -rp):
        for b in (rm, -rm):
            cands.append(((a + b) / 2 - 0.5, (a - b) / 2))
    l1, l2 = max(cands, key=lambda c: (round(c[0].real, 12), -abs(c[1])))
    return complex(l1), complex(l2), {"plus": complex(v1 + 0.25 + v2), "minus": complex(v1 + 0.25 - v2)}


def printed_footnote_radicand(p: ModelParams):
    """``1 + 4k^2K1 + 4eK2 + 8ekK1K2 + 4e^2K2^2`` as published."""
    e, k, K1, K2 = p.e, p.k, p.K1, p.K2
    return 1 + 4 * k**2 * K1 + 4 * e * K2 + 8 * e * k * K1 * K2 + 4 * e**2 * K2**2


def printed_lambda1(p: ModelParams, lambda2, branch):
    s = Branch.parse(branch).sign
    return 0.5 * (-1 - 2 * lambda2 - s * np.sqrt(complex(printed_footnote_radicand(p))))


def scarf_lambdas(p: ModelParams, c2, branch, tol=_MATCH_TOL) -> ScarfSpectrumParams:
    """Scarf parameters of ``V_-^(2)`` and their cross-check against ``U_B``.

    ``lambda1``, ``lambda2`` come from the ``sech tanh`` / ``sech^2``
    coefficients of ``V_-^(2)``; the same quadratic applied to the
    coefficients of ``U_B(p)`` must give the same ``lambda1``.

    Raises
    ------
    InconsistentMatch
        If the two values of ``lambda1`` (or the constants) differ by more
        than ``tol``; that is, ``p`` is not matched to ``c2``.
    """
    branch = Branch.parse(branch)
    q = p.q
    c0, cst, cs2 = minus_partner_coefficients(c2, branch, q)
    l1, l2, rad = lambdas_from_coefficients(cst, cs2, q)
    b0, bst, bs2 = effective_potential_coefficients("B", p)
    m1, m2, rad_b = lambdas_from_coefficients(bst, bs2, q)
    if abs(l1 - m1) > tol * max(1, abs(l1)) or abs(c0 - b0) > tol * max(1, abs(c0)):
        raise InconsistentMatch(
            f"lambda1 from V_-^(2) is {l1:.10g} but from U_B is {m1:.10g} "
            f"(constants {c0:.6g} vs {b0:.6g})")
    radicands = {"minus_partner": rad, "effective_B": rad_b,
                 "derived_footnote": 4 * rad_b["plus"],
                 "printed_footnote": printed_footnote_radicand(p)}
    return ScarfSpectrumParams(l1, l2, ladder_top(l1, c0), c0, q, branch, c2,
                               printed_lambda1(p, l2, branch), radicands)


def spectrum_from_extension(c2, branch, q=1.0) -> ScarfSpectrumParams:
    """Scarf parameters of ``V_-^(2)`` alone (no model cross-check)."""
    branch = Branch.parse(branch)
    c0, cst, cs2 = minus_partner_coefficients(c2, branch, q)
    l1, l2, rad = lambdas_from_coefficients(cst, cs2, q)
    return ScarfSpectrumParams(l1, l2, ladder_top(l1, c0), c0, q, branch, c2, None, {"minus_partner": rad})


class Level(NamedTuple):
    n: int
    e_squared: complex
    energy: complex


def analytic_spectrum(sp: ScarfSpectrumParams, n: int, partner=False) -> Level:
    """Level ``n`` of ``V_-^(2)`` or, with ``partner=True``, of ``V_+^(2)``.

    ``E_+,n = E_-,n+1``.  The energy is the principal root of ``E^2``.

    Raises
    ------
    OutOfLadder
        If the requested minus-level index exceeds ``n_max``.
    """
    if n < 0:
        raise OutOfLadder("level index must be non-negative")
    m = n + 1 if partner else n
    if m > sp.n_max:
        raise OutOfLadder(f"level {m} beyond n_max={sp.n_max}")
    e2 = complex(sp.constant - (sp.lambda1 - m) ** 2)
    return Level(n, e2, complex(np.sqrt(e2)))


def analytic_levels(sp: ScarfSpectrumParams, partner=False):
    top = sp.n_max - 1 if partner else sp.n_max
    return [analytic_spectrum(sp, n, partner) for n in range(top + 1)]


# --------------------------------------------------------------------------
# eigenfunctions
# --------------------------------------------------------------------------

EIGEN_KINDS = ("ground_w1", "minus_n", "plus_n")


def _shifted(z, q):
    """``(sech y, tanh y, sinh y, cosh y)`` with ``y = z - log(q)/2``."""
    sq = np.sqrt(complex(q)) if not (np.isreal(q) and np.real(q) > 0) else math.sqrt(float(np.real(q)))
    c = qd.cosh_q(z, q) / sq
    s = qd.sinh_q(z, q) / sq
    return 1 / c, s / c, s, c


def ground_w1(p: ModelParams, z):
    """``exp[2 i e K2 arctan(tanh_q(z/2))] (sech_q z)^(-k K1)`` as published."""
    ph = qd.phase_helper("arctan_tanh_half", z, p.q)
    lg = qd.continuous_log(np.atleast_1d(qd.sech_q(z, p.q)))
    out = np.exp(2j * p.e * p.K2 * ph - p.k * p.K1 * lg.reshape(np.shape(z)))
    return out[()] if np.ndim(z) == 0 else out


def minus_state(n, sp: ScarfSpectrumParams, z, derivative=False):
    """Unnormalized ``(sech y)^l1 exp(-i l2 arctan sinh y) P_n^(a,b)(i sinh y)``.

    ``a = l2 - l1 - 1/2``, ``b = -l2 - l1 - 1/2``.  With ``derivative=True``
    the analytic ``d/dz`` is returned too.
    """
    l1, l2 = sp.lambda1, sp.lambda2
    a, b = l2 - l1 - 0.5, -l2 - l1 - 0.5
    sech, tanh, sinh, cosh = _shifted(np.asarray(z), sp.q)
    lg = qd.continuous_log(np.atleast_1d(sech)).reshape(np.shape(sech))
    ph = qd.phase_helper("arctan_sinh", np.asarray(z) - sp.center, 1.0)
    env = np.exp(l1 * lg - 1j * l2 * ph)
    x = 1j * sinh
    pn = jacobi(n, a, b, x)
    psi = env * pn
    if not derivative:
        return psi
    dpn = jacobi_derivative(n, a, b, x)
    dpsi = env * ((-l1 * tanh - 1j * l2 * sech) * pn + 1j * cosh * dpn)
    return psi, dpsi


def eigenfunction(which, n, p, sp: ScarfSpectrumParams, z, ext: ScarfExtension | None = None):
    """Closed-form (unnormalized) eigenfunction values.

    ``ground_w1`` ignores ``n`` and ``sp``; ``minus_n`` is the Scarf state of
    ``V_-^(2)``; ``plus_n`` is ``(d/dz + W2) minus_{n-1} / sqrt(E^2_{n-1})``
    and needs ``ext``.

    Raises
    ------
    OutOfLadder
        If ``n`` exceeds the ladder or ``plus_n`` is requested with ``n < 1``.
    ZeroModeIntertwine
        If ``plus_n`` would divide by a zero ``E^2_{n-1}``.
    """
    if which == "ground_w1":
        return ground_w1(p, z)
    if which == "minus_n":
        if n < 0 or n > sp.n_max:
            raise OutOfLadder(f"minus_{n} outside 0..{sp.n_max}")
        return minus_state(n, sp, z)
    if which == "plus_n":
        if n < 1 or n - 1 > sp.n_max:
            raise OutOfLadder(f"plus_{n} needs 1 <= n <= {sp.n_max + 1}")
        if ext is None:
            raise ValueError("plus_n needs the extension parameters")
        e2 = analytic_spectrum(sp, n - 1).e_squared
        if abs(e2) <= 1e-10:
            raise ZeroModeIntertwine(f"E^2 of minus_{n - 1} is zero")
        psi, dpsi = minus_state(n - 1, sp, z, derivative=True)
        w2 = w2_superpotential(ext)
        return (dpsi + w2.value(np.asarray(z)) * psi) / np.sqrt(e2)
    raise ValueError(f"which must be one of {EIGEN_KINDS}")


def eigenfunction_field(which, n, p, sp, grid: GridSpec, ext=None) -> ComplexGridField:
    """Eigenfunction on ``grid`` with unit discrete L2 norm."""
    z = grid.points
    vals = eigenfunction(which, n, p, sp, z, ext)
    return ComplexGridField(z, vals, {"which": which, "n": n}).normalized()


def pt_defect(v, center, z):
    """``max |V(c - t) - conj V(c + t)|`` over offsets ``t``."""
    t = np.asarray(z)
    return float(np.max(np.abs(v(center - t) - np.conj(v(center + t)))))


def shape_of_w2(ext: ScarfExtension):
    """Scarf form of ``W2`` once the extension constraints hold.

    Returns ``(A, B)`` with ``W2 = A tanh y + i B sech y``.
    """
    sq = np.sqrt(complex(ext.q))
    # C3 cosh_q/(r1 + r2 sinh_q) = (C3 sq / r1)(sech y + i s tanh y)
    g = ext.C3 * sq / ext.r1
    s = ext.branch.sign
    return complex(ext.C1 + 1j * s * g), complex((ext.C2 / sq - 1j * g))
