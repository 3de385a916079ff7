"""
Finite-difference eigensolver for ``-phi'' + U phi = E^2 phi`` with complex U.

The operator is discretized with the 3-point Laplacian on the interior nodes
of a Dirichlet box and diagonalized densely with ``scipy.linalg.eig``.  No
symmetry of ``U`` is assumed.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg as sla

from .errors import PoleOnGrid, SolverFailure
from .grid import ComplexGridField, GridSpec

log = logging.getLogger(__name__)

BAND_FRACTION = 0.05
DEFAULT_LEAK_TOL = 0.01
DEFAULT_IM_TOL = 1e-6


class Eigenpair(NamedTuple):
    value: complex
    vector: ComplexGridField | None


class BoundState(NamedTuple):
    value: complex
    localization: float
    boundary_leak: float
    vector: ComplexGridField | None


def hamiltonian_matrix(u, grid: GridSpec):
    """Dense ``-d^2/dz^2 + diag(U)`` on the interior nodes."""
    z = grid.points
    with np.errstate(all="ignore"):
        uz = np.asarray(u(z), dtype=complex) if callable(u) else np.asarray(u, dtype=complex)
    bad = ~np.isfinite(uz)
    if np.any(bad):
        raise PoleOnGrid(f"potential not finite at z={z[bad][0]:.6g}", location=float(z[bad][0]))
    h = grid.spacing
    n = grid.n_points
    off = -np.ones(n - 1) / h**2
    return np.diag(2 / h**2 + uz) + np.diag(off, 1) + np.diag(off, -1)


def solve_spectrum(u, grid: GridSpec, vectors=True):
    """All eigenpairs of the discretized operator, sorted by real part.

    Parameters
    ----------
    u : callable or array_like
        Potential ``U(z)`` or its samples on ``grid.points``.
    grid : GridSpec
    vectors : bool
        Skip eigenvectors when False (about twice as fast).

    Raises
    ------
    PoleOnGrid
        If ``U`` is not finite on the grid.
    SolverFailure
        If LAPACK does not converge.
    """
    hmat = hamiltonian_matrix(u, grid)
    try:
        if vectors:
            w, v = sla.eig(hmat, overwrite_a=True, check_finite=False)
        else:
            w = sla.eigvals(hmat, overwrite_a=True, check_finite=False)
            v = None
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SolverFailure(str(exc)) from exc
    order = np.lexsort((w.imag, w.real))
    z = grid.points
    out = []
    for i in order:
        vec = None
        if v is not None:
            vec = ComplexGridField(z, v[:, i]).normalized()
        out.append(Eigenpair(complex(w[i]), vec))
    return out


def boundary_leak(vec: ComplexGridField, band=BAND_FRACTION):
    """Peak ``|v|`` within the outer ``band`` of the box over the global peak."""
    a = np.abs(vec.values)
    m = max(1, int(math.ceil(band * a.size)))
    peak = a.max()
    if peak == 0:
        return np.inf
    return float(max(a[:m].max(), a[-m:].max()) / peak)


def localization(vec: ComplexGridField):
    """Fraction of the squared norm carried by the central half of the box."""
    a2 = np.abs(vec.values) ** 2
    n = a2.size
    return float(a2[n // 4: n - n // 4].sum() / a2.sum())


def select_bound(pairs, im_tol=np.inf, leak_tol=DEFAULT_LEAK_TOL, max_states=None):
    """Keep eigenpairs that look like bound states.

    A pair is kept when its boundary leak is at most ``leak_tol`` and
    ``|Im E^2| <= im_tol * max(1, |Re E^2|)``.  The default ``im_tol`` is
    infinite so that reality can be tested on the survivors instead of being
    imposed by the filter.
    """
    out = []
    for ev, vec in pairs:
        if vec is None:
            raise ValueError("bound-state selection needs eigenvectors")
        leak = boundary_leak(vec)
        if leak > leak_tol:
            continue
        if abs(ev.imag) > im_tol * max(1.0, abs(ev.real)):
            continue
        out.append(BoundState(ev, localization(vec), leak, vec))
        if max_states is not None and len(out) >= max_states:
            break
    return out


def relative_residual(numeric, analytic):
    return abs(numeric - analytic) / max(1.0, abs(analytic))


@dataclass
class SpectrumReport:
    """Analytic levels paired with oracle eigenvalues."""

    analytic: list
    numeric: list
    matches: list
    unmatched: list
    rel_tol: float
    convergence: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.unmatched and all(m["residual"] <= self.rel_tol for m in self.matches)

    @property
    def max_residual(self):
        return max((m["residual"] for m in self.matches), default=np.inf if self.unmatched else 0.0)

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


def compare_spectra(analytic, numeric, rel_tol=1e-4):
    """Greedy nearest-in-``E^2`` matching of analytic levels to eigenvalues.

    Parameters
    ----------
    analytic : list of (n, E^2)
    numeric : list of complex or BoundState
    rel_tol : float
        Residual ``|E_num - E_an| / max(1, |E_an|)`` allowed per match.
    """
    nums = [complex(x.value) if hasattr(x, "value") else complex(x) for x in numeric]
    cand = []
    for n, e2 in analytic:
        for j, x in enumerate(nums):
            cand.append((relative_residual(x, complex(e2)), n, j))
    cand.sort(key=lambda c: (c[0], c[1], c[2]))
    used_n, used_j, matches = set(), set(), []
    for r, n, j in cand:
        if n in used_n or j in used_j:
            continue
        used_n.add(n)
        used_j.add(j)
        matches.append({"n": n, "index": j, "residual": float(r), "numeric": nums[j],
                        "analytic": complex(dict(analytic)[n])})
    matches.sort(key=lambda m: m["n"])
    unmatched = [n for n, _ in analytic if n not in used_n]
    return SpectrumReport([(n, complex(e2)) for n, e2 in analytic], nums, matches, unmatched, rel_tol)


def nearest_eigenvalues(values, targets):
    """For each target the closest entry of ``values`` (injective, greedy)."""
    values = list(values)
    out = []
    taken = set()
    for t in targets:
        order = np.argsort([abs(v - t) if i not in taken else np.inf for i, v in enumerate(values)])
        j = int(order[0])
        taken.add(j)
        out.append(values[j])
    return out


def grid_convergence(u, grid: GridSpec, analytic, coarse_values=None):
    """Errors on ``grid`` and on the refined grid (``h`` halved).

    Returns ``{n: {"coarse": err, "fine": err, "ratio": coarse/fine}}``.
    """
    if coarse_values is None:
        coarse_values = [p.value for p in solve_spectrum(u, grid, vectors=False)]
    fine_values = [p.value for p in solve_spectrum(u, grid.refined(), vectors=False)]
    targets = [complex(e2) for _, e2 in analytic]
    c = nearest_eigenvalues(coarse_values, targets)
    f = nearest_eigenvalues(fine_values, targets)
    out = {}
    for (n, e2), a, b in zip(analytic, c, f):
        ec, ef = abs(a - e2), abs(b - e2)
        out[n] = {"coarse": ec, "fine": ef, "ratio": ec / ef if ef > 0 else np.inf,
                  "coarse_value": complex(a), "fine_value": complex(b),
                  "richardson": complex(richardson(a, b))}
    return out


def richardson(coarse, fine, order=2):
    """Extrapolate a value computed at spacings ``h`` and ``h/2``."""
    f = 2**order
    return (f * fine - coarse) / (f - 1)


def extrapolated_eigenvalues(u, grid: GridSpec, k):
    """Lowest ``k`` eigenvalues (by real part) Richardson-extrapolated from ``h`` and ``h/2``."""
    coarse = [p.value for p in solve_spectrum(u, grid, vectors=False)][:k]
    fine_all = [p.value for p in solve_spectrum(u, grid.refined(), vectors=False)]
    fine = nearest_eigenvalues(fine_all, coarse)
    return [complex(richardson(a, b)) for a, b in zip(coarse, fine)]


def decay_half_width(lambda1, threshold=1e-10):
    """Half-width ``L`` with ``sech(L)^Re(lambda1) = threshold``."""
    lr = float(np.real(lambda1))
    if lr <= 0:
        raise ValueError("decay rule needs Re lambda1 > 0")
    return float(np.arccosh(threshold ** (-1.0 / lr)))
