"""
x-space form of the Dirac-Weyl problem.

With ``psi = phi / sqrt(V_F)`` and ``dz = dx / V_F`` the second-order
equation

    -V_F^2 psi'' - 2 V_F V_F' psi' + U_eff psi = E^2 psi

becomes ``-phi_zz + U phi = E^2 phi``, where ``U`` is ``U_eff`` plus the
measure terms ``V_F'^2/4 + V_F V_F''/2`` (primes are ``d/dx``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import optimize

from . import qdeform as qd
from .errors import NonMonotone, OutOfDomain, OutOfRange, ResidualTooLarge
from .grid import STENCIL_HALF, ComplexGridField, fd_derivative
from .scarf import ModelParams, superpotential_w1

_RESIDUAL_LIMIT = 1e-3


@dataclass(frozen=True)
class FieldProfile:
    """Fermi velocity and vector potential as functions of ``x``.

    ``x_of_z`` is optional and only needed to pull z-space fields back.
    """

    fermi_velocity: Callable
    d_fermi_velocity: Callable
    dd_fermi_velocity: Callable
    vector_potential: Callable
    d_vector_potential: Callable
    domain: tuple = (-np.inf, np.inf)
    x_of_z: Callable | None = None

    def check_domain(self, x):
        x = np.asarray(x)
        lo, hi = self.domain
        if np.any(x < lo) or np.any(x > hi) or np.any(~np.isfinite(x)):
            raise OutOfDomain(f"x outside declared domain {self.domain}")


def constant_profile(v, a0=0.0):
    """Constant Fermi velocity ``v`` and constant potential ``a0``."""
    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    return FieldProfile(lambda x: v + zero(x), zero, zero, lambda x: a0 + zero(x), zero,
                        x_of_z=lambda z: v * np.asarray(z))


def effective_potential_x(component, f: FieldProfile, k, e, x):
    """``U_eff,A`` / ``U_eff,B``; they differ in the sign of the second term.

        U_eff = -(eA - ikV)^2 +- iV(eA' - ikV') - V'^2/4 - V V''/2
    """
    f.check_domain(x)
    sgn = {"A": 1, "B": -1}.get(component)
    if sgn is None:
        raise ValueError("component must be 'A' or 'B'")
    v, dv, ddv = f.fermi_velocity(x), f.d_fermi_velocity(x), f.dd_fermi_velocity(x)
    a, da = f.vector_potential(x), f.d_vector_potential(x)
    return (-(e * a - 1j * k * v) ** 2 + sgn * 1j * v * (e * da - 1j * k * dv)
            - 0.25 * dv**2 - 0.5 * v * ddv)


def domain_edge(p: ModelParams):
    """``z_c = log(q)/2``, where ``tanh_q`` changes sign (``q > 0``)."""
    if not (np.isreal(p.q) and np.real(p.q) > 0):
        raise OutOfDomain("the x-space map needs real q > 0")
    return 0.5 * float(np.log(np.real(p.q)))


def _x_of_z(p: ModelParams, z, anchor):
    z = np.asarray(z, dtype=float)
    return p.K1 * (qd.log_cosh_q(z, float(np.real(p.q))) - qd.log_cosh_q(anchor, float(np.real(p.q))))


def coordinate_map(p: ModelParams, direction, value, anchor=None):
    """``x(z) = K1 log cosh_q z - K1 log cosh_q z0`` or its inverse.

    The map is defined for ``z >= z_c = log(q)/2`` where ``V_F = K1 tanh_q z``
    is non-negative; ``anchor`` (``z0``) defaults to ``z_c``.

    Raises
    ------
    NonMonotone
        If ``K1 < 0`` (``V_F`` negative on the half-line).
    OutOfRange
        If ``z < z_c`` or ``x`` lies below ``x(z_c)``.
    """
    zc = domain_edge(p)
    if p.K1 <= 0:
        raise NonMonotone("V_F = K1 tanh_q z is not positive for z > z_c when K1 <= 0")
    z0 = zc if anchor is None else float(anchor)
    if direction == "x_of_z":
        if np.any(np.asarray(value) < zc):
            raise OutOfRange(f"z below the domain edge z_c={zc:.6g}")
        return _x_of_z(p, value, z0)
    if direction != "z_of_x":
        raise ValueError("direction must be 'x_of_z' or 'z_of_x'")
    x = float(value)
    x_min = float(_x_of_z(p, zc, z0))
    if x < x_min - 1e-14 * max(1, abs(x_min)):
        raise OutOfRange(f"x={x} below x(z_c)={x_min:.6g}")
    if x <= x_min:
        return zc
    hi = max(zc + 1.0, z0 + 1.0)
    while _x_of_z(p, hi, z0) < x:
        hi = zc + 2 * (hi - zc)
        if hi - zc > 1e6:
            raise OutOfRange(f"x={x} beyond the bracketing range")
    return optimize.brentq(lambda t: float(_x_of_z(p, t, z0)) - x, zc, hi, xtol=1e-12, rtol=4 * np.finfo(float).eps)


def z_of_x_array(p: ModelParams, x, anchor=None):
    """Closed-form vectorized inverse of ``x(z)`` (used inside profiles)."""
    zc = domain_edge(p)
    z0 = zc if anchor is None else anchor
    q = float(np.real(p.q))
    lc = np.asarray(x, dtype=float) / p.K1 + qd.log_cosh_q(z0, q)
    # e^z + q e^-z = 2C; take the root with z >= z_c; work in logs for large C
    c = np.exp(lc)
    return np.log(c + np.sqrt(np.maximum(c * c - q, 0.0)))


def model_profile(p: ModelParams, anchor=None) -> FieldProfile:
    """``V_F = K1 tanh_q z(x)``, ``A = K2 sech_q z(x)`` with chain-rule derivatives."""
    q = p.q
    zc = domain_edge(p)
    z0 = zc if anchor is None else anchor

    def zx(x):
        return z_of_x_array(p, x, z0)

    def v(x):
        return p.K1 * qd.tanh_q(zx(x), q)

    def dv(x):
        z = zx(x)
        return q / (qd.cosh_q(z, q) * qd.sinh_q(z, q))

    def ddv(x):
        z = zx(x)
        c, s = qd.cosh_q(z, q), qd.sinh_q(z, q)
        return -q * (s * s + c * c) / (p.K1 * s**3 * c)

    def a(x):
        return p.K2 * qd.sech_q(zx(x), q)

    def da(x):
        return -(p.K2 / p.K1) * qd.sech_q(zx(x), q)

    x_lo = float(_x_of_z(p, zc, z0))
    return FieldProfile(v, dv, ddv, a, da, (x_lo, np.inf), lambda z: _x_of_z(p, z, z0))


def eq2_operator(f: FieldProfile, k, e, component, z, psi):
    """``-V^2 psi_xx - 2 V V_x psi_x + U_eff psi`` from z-derivatives of psi.

    With ``d/dx = V^-1 d/dz`` the derivative part is ``-psi_zz - (V_z/V) psi_z``.
    """
    z = np.asarray(z)
    h = z[1] - z[0]
    x = f.x_of_z(z)
    v = f.fermi_velocity(x)
    vz = v * f.d_fermi_velocity(x)
    dpsi = fd_derivative(psi, h, 1)
    d2psi = fd_derivative(psi, h, 2)
    return -d2psi - (vz / v) * dpsi + effective_potential_x(component, f, k, e, x) * psi


def eq2_residual(f: FieldProfile, k, e, component, z, psi, e_squared):
    """``||(L - E^2) psi|| / (max(1, |E^2|) ||psi||)`` on the stencil interior."""
    r = eq2_operator(f, k, e, component, z, psi) - e_squared * psi
    sl = slice(STENCIL_HALF, len(psi) - STENCIL_HALF)
    den = np.linalg.norm(psi[sl]) * max(1.0, abs(e_squared))
    return float(np.linalg.norm(r[sl]) / den) if den > 0 else np.inf


@dataclass(frozen=True)
class SpinorSolution:
    psi_a: ComplexGridField
    psi_b: ComplexGridField
    energy: complex
    k_y: float
    residuals: dict = field(default_factory=dict)


def assemble_spinor(phi_a: ComplexGridField, phi_b: ComplexGridField, p, energy,
                    k=None, e=None) -> SpinorSolution:
    """Pull z-space components back to ``psi = phi / sqrt(V_F)`` and check them.

    ``p`` is a :class:`ModelParams` (profile built from it) or a
    :class:`FieldProfile` with ``x_of_z``, in which case ``k`` and ``e`` are
    required.  The fields of the result are sampled on the (non-uniform)
    x-image of the z-grid.  A component that vanishes identically is accepted
    only at ``E = 0``.

    Raises
    ------
    ResidualTooLarge
        If a component misses the second-order equation by more than 1e-3,
        or if both components vanish.
    """
    if isinstance(p, ModelParams):
        f = model_profile(p)
        k, e = p.k, p.e
    else:
        f = p
        if k is None or e is None:
            raise ValueError("k and e are required with an explicit profile")
    if not np.array_equal(phi_a.z, phi_b.z):
        raise ValueError("components must share a z-grid")
    z = phi_b.z
    x = f.x_of_z(z)
    f.check_domain(x)
    v = f.fermi_velocity(x)
    if np.any(v <= 0):
        raise NonMonotone("V_F must be positive on the grid")
    e2 = complex(energy) ** 2
    res = {}
    comps = {}
    peak = max(np.max(np.abs(phi_a.values)), np.max(np.abs(phi_b.values)))
    if peak == 0:
        raise ResidualTooLarge("both spinor components vanish", residual=np.inf)
    for name, phi in (("A", phi_a), ("B", phi_b)):
        psi = phi.values / np.sqrt(v)
        comps[name] = ComplexGridField(x, psi, {"grid": "x", "uniform": False})
        if np.max(np.abs(phi.values)) <= 1e-8 * peak:
            if abs(e2) > 1e-10:
                raise ResidualTooLarge(f"component {name} vanishes at nonzero energy", residual=np.inf)
            res[name] = 0.0
            continue
        r = eq2_residual(f, k, e, name, z, psi, e2)
        res[name] = r
        if not r <= _RESIDUAL_LIMIT:
            raise ResidualTooLarge(f"component {name} residual {r:.3g}", residual=r)
    return SpinorSolution(comps["A"], comps["B"], complex(energy), float(k), res)


def spinor_from_lower(phi_b: ComplexGridField, p: ModelParams, energy, dphi_b=None):
    """Build ``phi_A = (d/dz + W1) phi_B`` and assemble the spinor."""
    w1 = superpotential_w1(p)
    d = fd_derivative(phi_b.values, phi_b.spacing, 1) if dphi_b is None else dphi_b
    phi_a = ComplexGridField(phi_b.z, d + w1.value(phi_b.z) * phi_b.values)
    return assemble_spinor(phi_a, phi_b, p, energy)
