"""Full Green's function for one or many delta centers; bound states; residues.

One attractive center at the origin gives the exact resolvent

    G(E; x, y) = G0(E; x, y) + G0(E; x, 0) G0(E; 0, y) / D(E),

with D(E) the renormalized denominator from :mod:`deltagreen.renorm`.  For N
centers a_1..a_N the correction generalizes to a small linear solve:

    G = G0(x, y) + sum_ij G0(x, a_i) [M^-1]_ij G0(a_j, y),
    M_ii = D_i(E),      M_ij = -G0(E; a_i, a_j)   (i != j).

M is complex symmetric (real symmetric on the negative real axis).  Bound
states are the real E < 0 where det M vanishes; the residue of G there
factorizes as psi(x) psi(y) with

    psi(x) = sum_i c_i G0(E_B; x, a_i),     c = v / sqrt(v . M'(E_B) v),

where v is the null vector of M(E_B) and M' = dM/dE is evaluated by a
complex-step derivative (exact to machine precision).  The sign of psi is
fixed to be positive at the centroid of the centers; when the centroid value
vanishes (odd states) or is not evaluable (a center itself in D >= 2), the
probe moves along the first axis in small deterministic steps and the
largest-magnitude probe fixes the sign instead.

Renormalization never touches the off-diagonal entries: G0(a_i, a_j) is
finite for distinct centers, so each center carries its own coupling and
only the diagonal is renormalized.  Centers closer than 1e-10 are rejected
rather than merged, since merging would silently change how many couplings
get renormalized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AtPoleError,
    DeltaGreenError,
    DomainError,
    IllegalSpecError,
    NonConvergenceError,
)
from .greenfn import ComplexEnergy, GreenValue, SpatialPoint, distance, g0
from .renorm import (
    BARE_1D,
    CouplingSpec,
    renormalized_denominator,
)
from .rootfind import bracket_sign_changes, refine_root

#: Relative |det M| below which an evaluation counts as sitting on a pole.
DET_POLE_TOL = 1e-12

#: Centers closer than this are rejected as coincident.
CENTER_DISTINCT_TOL = 1e-10


@dataclass(frozen=True)
class DeltaCenter:
    """A point interaction: position plus its coupling."""

    position: SpatialPoint
    coupling: CouplingSpec

    def __post_init__(self):
        self.coupling.require_dim(self.position.dim)


def center(position, coupling: CouplingSpec) -> DeltaCenter:
    """Convenience constructor; ``position`` may be a number, tuple or point."""
    if isinstance(position, SpatialPoint):
        pos = position
    elif isinstance(position, (int, float)):
        pos = SpatialPoint.of(float(position))
    else:
        pos = SpatialPoint(tuple(position))
    return DeltaCenter(position=pos, coupling=coupling)


@dataclass(frozen=True, eq=False)
class MMatrix:
    """Snapshot of the N x N matrix whose zero eigenvalues mark bound states."""

    entries: np.ndarray
    dim: int
    energy: ComplexEnergy

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def det(self) -> complex:
        return complex(np.linalg.det(self.entries))


@dataclass(frozen=True, eq=False)
class BoundState:
    """A bound state: energy, the centers that bind it, and the residue vector."""

    energy: float
    dim: int
    centers: tuple[DeltaCenter, ...]
    residue_vector: np.ndarray = field(repr=False)

    @property
    def kappa(self) -> float:
        return math.sqrt(-self.energy)


def _validate_centers(dim: int, centers) -> tuple[DeltaCenter, ...]:
    cs = tuple(centers)
    if not cs:
        raise IllegalSpecError("at least one center required")
    for c in cs:
        if c.position.dim != dim:
            raise IllegalSpecError(
                "center dimension mismatch", dim=dim, center_dim=c.position.dim
            )
        c.coupling.require_dim(dim)
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            if distance(cs[i].position, cs[j].position) < CENTER_DISTINCT_TOL:
                raise IllegalSpecError(
                    "coincident centers (closer than 1e-10) are one center",
                    i=i,
                    j=j,
                )
    return cs


def m_matrix(dim: int, energy, centers) -> MMatrix:
    """Assemble M(E): renormalized denominators on the diagonal, -G0 off it."""
    e = ComplexEnergy.of(energy)
    cs = _validate_centers(dim, centers)
    n = len(cs)
    m = np.zeros((n, n), dtype=complex)
    for i, ci in enumerate(cs):
        m[i, i] = renormalized_denominator(dim, e, ci.coupling).value
        for j in range(i + 1, n):
            val = -g0(dim, e, ci.position, cs[j].position).value
            m[i, j] = val
            m[j, i] = val
    m.setflags(write=False)
    return MMatrix(entries=m, dim=dim, energy=e)


def _det_scale(m: np.ndarray) -> float:
    """Hadamard-style scale: product of row maxima, an upper bound for |det|."""
    rows = np.max(np.abs(m), axis=1)
    return float(np.prod(rows))


def green(dim: int, energy, x: SpatialPoint, y: SpatialPoint, centers) -> GreenValue:
    """Green's function of the free Hamiltonian plus the given delta centers.

    Reduces to :func:`deltagreen.greenfn.g0` for an empty center list.
    Raises :class:`AtPoleError` when |det M| falls below 1e-12 relative to
    its natural scale (the energy sits on a bound-state pole).
    """
    cs = tuple(centers)
    if not cs:
        return g0(dim, energy, x, y)
    mm = m_matrix(dim, energy, cs)
    det = mm.det()
    scale = _det_scale(mm.entries)
    if scale == 0.0 or abs(det) <= DET_POLE_TOL * scale:
        raise AtPoleError(
            "energy is at (or numerically too close to) a bound-state pole",
            det=abs(det),
            scale=scale,
        )
    e = mm.energy
    gx = np.array([g0(dim, e, x, c.position).value for c in cs])
    gy = np.array([g0(dim, e, c.position, y).value for c in cs])
    base = g0(dim, e, x, y)
    corr = complex(gx @ np.linalg.solve(mm.entries, gy))
    return GreenValue(
        value=base.value + corr,
        dim=dim,
        retarded=base.retarded,
        branch_note=base.branch_note,
    )


def _closed_form_energies(dim: int, cs: tuple[DeltaCenter, ...]) -> list[float]:
    e_b = cs[0].coupling.bound_state_energy(dim)
    return [e_b] if e_b is not None else []


def _m_prime(dim: int, e_b: float, cs) -> np.ndarray:
    """dM/dE at real E_B by a complex step; exact to machine precision."""
    h = 1e-20 * max(1.0, abs(e_b))
    m_shift = m_matrix(dim, complex(e_b, h), cs).entries
    return np.imag(m_shift) / h


def _sign_probes(dim: int, cs) -> list[SpatialPoint]:
    pts = np.array([c.position.coords for c in cs], dtype=float)
    centroid = pts.mean(axis=0)
    span = max(1.0, float(np.max(np.abs(pts - centroid))))
    probes = [centroid]
    for step in (0.37, 0.79, 1.31):
        shifted = centroid.copy()
        shifted[0] += step * span
        probes.append(shifted)
    return [SpatialPoint(tuple(p)) for p in probes]


def _residue_vector(dim: int, e_b: float, cs) -> np.ndarray:
    m = m_matrix(dim, e_b, cs).entries.real
    w, v = np.linalg.eigh(m)
    null = v[:, int(np.argmin(np.abs(w)))]
    mp = _m_prime(dim, e_b, cs)
    slope = float(null @ mp @ null)
    if slope <= 0.0:
        raise NonConvergenceError(
            "residue normalization failed (non-positive dM/dE at the root)",
            energy=e_b,
        )
    c = null / math.sqrt(slope)
    # fix the overall sign: psi > 0 at the centroid, falling back to probes
    # along the first axis for odd states or unevaluable centroids
    best = 0.0
    for p in _sign_probes(dim, cs):
        try:
            val = _psi_raw(dim, e_b, cs, c, p)
        except DeltaGreenError:
            continue
        if abs(val) > abs(best):
            best = val
    if best < 0.0:
        c = -c
    out = np.asarray(c, dtype=float)
    out.setflags(write=False)
    return out


def _psi_raw(dim: int, e_b: float, cs, coeff, x: SpatialPoint) -> float:
    # psi evaluation shared by the sign fix and the public accessor
    total = 0.0
    for ci, c in zip(cs, coeff):
        total += float(c) * g0(dim, e_b, x, ci.position).value.real
    return total


def bound_states(
    dim: int,
    centers,
    search: tuple[float, float] | None = None,
    tol: float = 1e-12,
    method: str = "auto",
    grid_points: int = 400,
) -> list[BoundState]:
    """All bound states of the given centers, ascending in energy.

    Parameters
    ----------
    dim, centers
        Dimension and delta centers (couplings legal for the dimension).
    search : (E_min, E_max) or None
        Window on the negative real axis.  None picks a window wide enough
        around the single-center closed-form scales.
    tol : float
        Energy tolerance for root polishing.
    method : str
        "auto" returns the closed form directly for a single center;
        "scan" forces the generic det-M sign-change search.
    grid_points : int
        Resolution of the log-spaced kappa scan grid.

    Notes
    -----
    The scan walks det M on a log-spaced grid of kappa = sqrt(-E) (poles
    crowd toward E = 0- for weak coupling), brackets sign changes, bisects
    and secant-polishes each to |dE| <= tol.  An empty result is not an
    error.  For a single center the closed forms take precedence so the
    textbook formulas are testable verbatim.
    """
    cs = _validate_centers(dim, centers)
    if not (tol > 0.0):
        raise DomainError("tol must be positive", tol=tol)
    if method not in ("auto", "scan"):
        raise IllegalSpecError("method must be 'auto' or 'scan'", method=method)

    window = _search_window(dim, cs, search)

    if method == "auto" and len(cs) == 1:
        energies = [
            e for e in _closed_form_energies(dim, cs) if window[0] <= e <= window[1]
        ]
    else:
        energies = _scan_energies(dim, cs, window, tol, grid_points)

    states = []
    for e_b in sorted(float(e) for e in energies):
        states.append(
            BoundState(
                energy=e_b,
                dim=dim,
                centers=cs,
                residue_vector=_residue_vector(dim, e_b, cs),
            )
        )
    return states


def _search_window(dim, cs, search):
    if search is not None:
        e_min, e_max = float(search[0]), float(search[1])
        if not (e_min < e_max < 0.0):
            raise DomainError(
                "search window must satisfy E_min < E_max < 0",
                e_min=e_min,
                e_max=e_max,
            )
        return e_min, e_max
    scales = [1.0]
    for c in cs:
        e_b = c.coupling.bound_state_energy(dim)
        if e_b is not None:
            scales.append(math.sqrt(-e_b))
    kap_hi = 4.0 * max(scales)
    kap_lo = min(scales) * 1e-3
    return -kap_hi * kap_hi, -kap_lo * kap_lo


def _scan_energies(dim, cs, window, tol, grid_points):
    e_min, e_max = window
    kap_lo = math.sqrt(-e_max)
    kap_hi = math.sqrt(-e_min)
    if grid_points < 2:
        raise DomainError("grid_points must be at least 2", grid_points=grid_points)

    def f(kap: float) -> float:
        return float(np.linalg.det(m_matrix(dim, -kap * kap, cs).entries.real))

    grid = np.geomspace(kap_lo, kap_hi, grid_points)
    roots = []
    for a, b in bracket_sign_changes(f, grid):
        kap = refine_root(f, a, b, xtol=tol / (2.0 * b))
        roots.append(-kap * kap)
    # collapse duplicates from adjacent brackets
    roots.sort()
    out: list[float] = []
    for e in roots:
        if not out or abs(e - out[-1]) > max(10.0 * tol, 1e-12 * abs(e)):
            out.append(e)
    return out


def residue_wavefunction(state: BoundState, x) -> float:
    """Bound-state wavefunction psi_B(x) extracted from the residue of G.

    Normalized so the residue of :func:`green` at E_B equals
    psi_B(x) psi_B(y); in particular int |psi_B|^2 = 1.
    """
    if isinstance(x, (int, float)):
        x = SpatialPoint.of(float(x))
    elif not isinstance(x, SpatialPoint):
        x = SpatialPoint(tuple(x))
    return _psi_raw(state.dim, state.energy, state.centers, state.residue_vector, x)
