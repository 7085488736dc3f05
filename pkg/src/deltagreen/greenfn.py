"""Free-particle Green's functions in one to three dimensions.

Conventions: hbar = 2m = 1, so energy carries units 1/length**2.  The free
resolvent G0(E; x, y) solves

    (E + Laplacian_x) G0(E; x, y) = delta(x - y),      G0 -> 0 as |x-y| -> inf,

and depends on the points only through r = |x - y|.  With kappa = sqrt(-E)
on the principal branch (Re kappa > 0 for E off the positive real axis) the
closed forms are

    D=1:  -exp(-kappa r) / (2 kappa)
    D=2:  -K0(kappa r) / (2 pi)
    D=3:  -exp(-kappa r) / (4 pi r)

The positive real axis is the branch cut.  Retarded values are the E + i0+
limits: kappa = -i k with k = sqrt(E) > 0, which turns the decaying
exponentials into outgoing waves exp(i k r).

Coincident points with D >= 2 are a typed error (:class:`CoincidentPointsError`),
never an infinity: that divergence is exactly what the renormalization
machinery in :mod:`deltagreen.renorm` exists to absorb.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import bessel
from .errors import (
    BranchCutError,
    CoincidentPointsError,
    DeltaGreenError,
    DomainError,
    IllegalSpecError,
    UnsupportedDimError,
)

#: Tolerance on Im(E) below which an energy with Re(E) >= 0 counts as sitting
#: on the branch cut.
BRANCH_CUT_TOL = 1e-12

#: Separations below this count as coincident points in D >= 2.
COINCIDENT_TOL = 1e-14

_TWO_PI = 2.0 * math.pi
_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class ComplexEnergy:
    """Energy E in units 1/length**2, tracking the branch prescription.

    Parameters
    ----------
    value : complex
        The energy.  Without the retarded flag it must stay off the positive
        real axis (|Im E| > 1e-12 whenever Re E >= 0); the cut, including the
        branch point E = 0, is rejected.
    retarded : bool
        True means "interpret as E + i0+ with E real", the outgoing-wave
        prescription used for scattering.
    """

    value: complex
    retarded: bool = False

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DomainError("energy must be finite", energy=repr(v))
        object.__setattr__(self, "value", v)
        if self.retarded:
            if v.imag != 0.0:
                raise BranchCutError(
                    "retarded energies are real E + i0+ limits; got nonzero Im E",
                    energy=repr(v),
                )
        elif v.real >= 0.0 and abs(v.imag) <= BRANCH_CUT_TOL:
            raise BranchCutError(
                "energy on the positive real axis (branch cut); "
                "set retarded=True for the E + i0+ limit",
                energy=repr(v),
            )

    @property
    def kappa(self) -> complex:
        """sqrt(-E) on the principal branch; -i*sqrt(E) in the retarded case."""
        if self.retarded:
            e = self.value.real
            if e > 0.0:
                return complex(0.0, -math.sqrt(e))
            return complex(math.sqrt(-e), 0.0)
        return cmath.sqrt(-self.value)

    @classmethod
    def of(cls, energy) -> "ComplexEnergy":
        if isinstance(energy, ComplexEnergy):
            return energy
        return cls(complex(energy))


@dataclass(frozen=True)
class SpatialPoint:
    """A point of R^D, D in {1, 2, 3, 4}; coordinates in units of length."""

    coords: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(v) for v in self.coords)
        if len(c) not in (1, 2, 3, 4):
            raise UnsupportedDimError(
                "points live in 1 to 4 dimensions", got=len(c)
            )
        if not all(math.isfinite(v) for v in c):
            raise DomainError("coordinates must be finite", coords=repr(c))
        object.__setattr__(self, "coords", c)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @classmethod
    def of(cls, *coords: float) -> "SpatialPoint":
        return cls(tuple(coords))


def distance(x: SpatialPoint, y: SpatialPoint) -> float:
    if x.dim != y.dim:
        raise IllegalSpecError("points of different dimension", xdim=x.dim, ydim=y.dim)
    return math.dist(x.coords, y.coords)


@dataclass(frozen=True)
class GreenValue:
    """A Green's-function value plus the branch bookkeeping it was computed with."""

    value: complex
    dim: int
    retarded: bool
    branch_note: str  # "principal" or "retarded_limit"

    def __post_init__(self):
        if not cmath.isfinite(self.value):
            raise DeltaGreenError("non-finite Green's function value", dim=self.dim)


def _check_geometry(dim: int, x: SpatialPoint, y: SpatialPoint) -> float:
    if dim not in (1, 2, 3):
        raise UnsupportedDimError(
            "position-space Green's functions exist here for D in {1,2,3}", dim=dim
        )
    if x.dim != dim or y.dim != dim:
        raise IllegalSpecError(
            "point dimension does not match dim", dim=dim, xdim=x.dim, ydim=y.dim
        )
    r = distance(x, y)
    if dim >= 2 and r < COINCIDENT_TOL:
        raise CoincidentPointsError(
            "free Green's function diverges at coincident points for D >= 2",
            dim=dim,
            r=r,
        )
    return r


def g0(dim: int, energy, x: SpatialPoint, y: SpatialPoint) -> GreenValue:
    """Free Green's function G0(E; x, y).

    Parameters
    ----------
    dim : int
        Spatial dimension, 1, 2 or 3.
    energy : ComplexEnergy or number
        Energy off the positive real axis, or retarded (E + i0+).
    x, y : SpatialPoint
        Evaluation points; for dim >= 2 they must be distinct.

    Returns
    -------
    GreenValue
        The unique solution of (E + Laplacian) G = delta(x - y) decaying at
        infinity; outgoing-wave form for retarded energies.
    """
    e = ComplexEnergy.of(energy)
    r = _check_geometry(dim, x, y)
    kap = e.kappa
    if dim == 1:
        val = -cmath.exp(-kap * r) / (2.0 * kap)
    elif dim == 2:
        if e.retarded and e.value.real > 0.0:
            # K0(-i k r) = (i pi / 2) H0^(1)(k r) keeps the retarded path on
            # the self-contained real-argument j0/y0 implementations
            k = math.sqrt(e.value.real)
            val = -0.25j * bessel.hankel1_0(k * r)
        else:
            val = -bessel.k0(kap * r) / _TWO_PI
    else:
        val = -cmath.exp(-kap * r) / (_FOUR_PI * r)
    note = "retarded_limit" if e.retarded else "principal"
    return GreenValue(value=val, dim=dim, retarded=e.retarded, branch_note=note)


def g0_retarded(dim: int, k: float, x: SpatialPoint, y: SpatialPoint) -> GreenValue:
    """Outgoing-wave Green's function at momentum k > 0 (energy E = k**2 + i0+).

    Closed forms: D=1: exp(ikr)/(2ik); D=2: -(i/4) H0^(1)(kr);
    D=3: -exp(ikr)/(4 pi r).
    """
    k = float(k)
    if not (k > 0.0) or not math.isfinite(k):
        raise DomainError("retarded evaluation needs k > 0", k=k)
    return g0(dim, ComplexEnergy(k * k, retarded=True), x, y)


def bessel_k0(z) -> complex:
    """Modified Bessel function K0(z) for Re z > 0 (see :mod:`deltagreen.bessel`)."""
    return bessel.k0(z)
