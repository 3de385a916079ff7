"""
First-order SUSY factorization.

With ``A = d/dz + W`` and ``A^dag = -d/dz + W``,

    H_- = A^dag A = -d^2 + W^2 - W',    H_+ = A A^dag = -d^2 + W^2 + W'.

The zero mode of ``H_-`` is ``exp(-int W)``; ``exp(+int W)`` is the zero
mode of ``H_+``.  Both are built and the decaying one is reported.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import InvalidSuperpotential, ZeroModeIntertwine
from .grid import STENCIL_HALF, ComplexGridField, GridSpec, fd_derivative

BRANCHES = ("plus_integral", "minus_integral")

_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)
_ZERO_MODE_TOL = 1e-10
_DECAY_TOL = 1e-6


@dataclass(frozen=True)
class Superpotential:
    """``W(z)`` together with its analytic derivative."""

    value: Callable
    derivative: Callable
    name: str = "W"

    def __call__(self, z):
        return self.value(z)

    def derivative_mismatch(self, z, h=1e-5):
        """Max ``|W' - central difference|`` over the sample points ``z``."""
        z = np.asarray(z)
        fd = (self.value(z + h) - self.value(z - h)) / (2 * h)
        return float(np.max(np.abs(self.derivative(z) - fd)))

    def validate(self, z, h=1e-5, tol=1e-6):
        mis = self.derivative_mismatch(z, h)
        if not mis <= tol:
            raise InvalidSuperpotential(f"{self.name}: supplied derivative off by {mis:.3g}")
        return self


@dataclass(frozen=True)
class PartnerPair:
    v_minus: Callable
    v_plus: Callable
    w: Superpotential


def partner_potentials(w: Superpotential) -> PartnerPair:
    """``V_- = W^2 - W'`` and ``V_+ = W^2 + W'``."""

    def v_minus(z):
        return w.value(z) ** 2 - w.derivative(z)

    def v_plus(z):
        return w.value(z) ** 2 + w.derivative(z)

    return PartnerPair(v_minus, v_plus, w)


def cumulative_integral(f, z, anchor_index=None):
    """``int_{z_a}^{z_i} f`` at every node, 8-point Gauss-Legendre per cell.

    ``anchor_index`` defaults to the middle node.
    """
    z = np.asarray(z, dtype=float)
    a, b = z[:-1], z[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
    cell = half * (np.asarray(f(nodes)) @ _GL_W)
    total = np.concatenate([[0.0], np.cumsum(cell)])
    k = len(z) // 2 if anchor_index is None else anchor_index
    return total - total[k]


class GroundState(NamedTuple):
    field: ComplexGridField
    residual: float
    normalizable: bool
    branch: str


def ground_state(w: Superpotential, grid: GridSpec, branch: str) -> GroundState:
    """Zero mode ``exp(+int W)`` or ``exp(-int W)`` sampled on ``grid``.

    The field is scaled to unit max modulus.  ``residual`` is
    ``||(d/dz -+ W) psi|| / ||psi||`` with 8th-order differences on the
    interior, and ``normalizable`` flags decay to below 1e-6 of the peak at
    both ends.
    """
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}")
    sign = 1.0 if branch == "plus_integral" else -1.0
    z = grid.points
    k = int(np.argmin(np.abs(z - grid.center)))
    logf = sign * cumulative_integral(w.value, z, k)
    logf = logf - np.max(np.real(logf))
    psi = np.exp(logf)
    dpsi = fd_derivative(psi, grid.spacing, 1)
    r = dpsi - sign * w.value(z) * psi
    sl = slice(STENCIL_HALF, len(z) - STENCIL_HALF)
    resid = float(np.linalg.norm(r[sl]) / np.linalg.norm(psi[sl]))
    ends = max(abs(psi[0]), abs(psi[-1]))
    field = ComplexGridField(z, psi, {"branch": branch})
    return GroundState(field, resid, bool(ends <= _DECAY_TOL), branch)


def ground_states(w: Superpotential, grid: GridSpec):
    """Both branches, keyed by branch name."""
    return {b: ground_state(w, grid, b) for b in BRANCHES}


def apply_intertwiner(w: Superpotential, z, phi, dphi=None, h=None):
    """``(d/dz + W) phi``; ``dphi`` is taken from 8th-order differences if absent."""
    z = np.asarray(z)
    if dphi is None:
        dphi = fd_derivative(phi, h if h is not None else z[1] - z[0], 1)
    return dphi + w.value(z) * phi


def intertwine_up(w: Superpotential, phi_minus: ComplexGridField, e_squared, dphi=None):
    """Map an eigenfunction of ``V_-`` to one of ``V_+`` at the same ``E^2``.

    Returns ``(d/dz + W) phi / sqrt(E^2)`` (principal root).  The
    unnormalized image is kept in ``meta["unscaled"]``.

    Raises
    ------
    ZeroModeIntertwine
        If ``|E^2| <= 1e-10``.
    """
    e_squared = complex(e_squared)
    if abs(e_squared) <= _ZERO_MODE_TOL:
        raise ZeroModeIntertwine(f"cannot intertwine a zero mode (E^2={e_squared:.3g})")
    img = apply_intertwiner(w, phi_minus.z, phi_minus.values, dphi)
    return ComplexGridField(phi_minus.z, img / np.sqrt(e_squared), {"unscaled": img, "e_squared": e_squared})


def apply_hamiltonian(u, z, phi, d2phi=None):
    """``-phi'' + u phi`` with ``u`` callable or sampled."""
    z = np.asarray(z)
    if d2phi is None:
        d2phi = fd_derivative(phi, z[1] - z[0], 2)
    uz = u(z) if callable(u) else np.asarray(u)
    return -d2phi + uz * phi


def eigen_residual(u, field: ComplexGridField, e_squared, d2phi=None):
    """``||(-d^2 + u - E^2) f|| / ||f||`` on the stencil interior."""
    hf = apply_hamiltonian(u, field.z, field.values, d2phi) - e_squared * field.values
    sl = field.interior()
    den = np.linalg.norm(field.values[sl])
    return float(np.linalg.norm(hf[sl]) / den) if den > 0 else np.inf
