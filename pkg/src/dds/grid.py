"""Uniform 1-D grids and complex fields sampled on them."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MIN_POINTS = 200

# central 9-point stencils, 8th order
_D1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0.0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])
_D2 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])
STENCIL_HALF = 4


@dataclass(frozen=True)
class GridSpec:
    """Dirichlet box ``[z_min, z_max]`` with ``n_points`` interior nodes.

    The walls themselves are not grid points; the wave function is taken to
    vanish there.
    """

    z_min: float
    z_max: float
    n_points: int
    center: float = 0.0

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < MIN_POINTS:
            raise ValueError(f"n_points must be an integer >= {MIN_POINTS}, got {self.n_points}")
        if not self.z_max > self.z_min:
            raise ValueError("z_max must exceed z_min")

    @classmethod
    def symmetric(cls, center, half_width, n_points):
        return cls(center - half_width, center + half_width, int(n_points), center)

    @property
    def spacing(self):
        return (self.z_max - self.z_min) / (self.n_points + 1)

    @property
    def points(self):
        return np.linspace(self.z_min, self.z_max, self.n_points + 2)[1:-1]

    @property
    def half_width(self):
        return 0.5 * (self.z_max - self.z_min)

    def is_symmetric(self, tol=1e-12):
        return abs(0.5 * (self.z_min + self.z_max) - self.center) <= tol * max(1.0, abs(self.center))

    def refined(self):
        """Same box with the spacing halved (``N -> 2N + 1``)."""
        return GridSpec(self.z_min, self.z_max, 2 * self.n_points + 1, self.center)


@dataclass(frozen=True)
class ComplexGridField:
    """Complex samples ``values`` at uniformly spaced real nodes ``z``."""

    z: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if z.ndim != 1 or v.shape != z.shape:
            raise ValueError("z and values must be 1-D arrays of equal length")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "values", v)

    @property
    def spacing(self):
        return float(self.z[1] - self.z[0])

    def norm(self):
        """Discrete L2 norm ``sqrt(h sum |f|^2)``."""
        return float(np.sqrt(self.spacing * np.sum(np.abs(self.values) ** 2)))

    def normalized(self):
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize a zero field")
        return ComplexGridField(self.z, self.values / nrm, dict(self.meta))

    def scaled(self, c):
        return ComplexGridField(self.z, self.values * c, dict(self.meta))

    def max_normalized(self):
        m = np.max(np.abs(self.values))
        if m == 0:
            raise ValueError("cannot normalize a zero field")
        return ComplexGridField(self.z, self.values / m, dict(self.meta))

    def derivative(self, order=1):
        return fd_derivative(self.values, self.spacing, order)

    def interior(self, margin=STENCIL_HALF):
        return slice(margin, len(self.z) - margin)


def fd_derivative(values, h, order=1):
    """First or second derivative with 8th-order central differences.

    The ``STENCIL_HALF`` points at each end use second-order one-sided
    ``np.gradient`` values; residuals should be measured on the interior.
    """
    f = np.asarray(values)
    if f.size < 2 * STENCIL_HALF + 1:
        raise ValueError("too few samples for the 9-point stencil")
    stencil = {1: _D1, 2: _D2}.get(order)
    if stencil is None:
        raise ValueError("order must be 1 or 2")
    out = np.gradient(f, h, edge_order=2)
    if order == 2:
        out = np.gradient(out, h, edge_order=2)
    n = f.size
    acc = np.zeros(n - 2 * STENCIL_HALF, dtype=np.result_type(f, float))
    for j, c in enumerate(stencil):
        if c != 0.0:
            acc = acc + c * f[j:n - 2 * STENCIL_HALF + j]
    out[STENCIL_HALF:-STENCIL_HALF] = acc / h**order
    return out


def relative_residual(residual, reference, sl=slice(None)):
    """``||residual|| / ||reference||`` over the slice ``sl``."""
    den = np.linalg.norm(np.asarray(reference)[sl])
    if den == 0:
        return np.inf
    return float(np.linalg.norm(np.asarray(residual)[sl]) / den)
