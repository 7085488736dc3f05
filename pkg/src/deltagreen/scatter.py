"""Scattering observables for a single delta center.

Three dimensions: a plane wave exp(ikz) hitting a renormalized contact
potential at the origin acquires the exact scattered piece

    psi(x) = exp(ikz) + G0_ret(k; x, 0) / D(k^2 + i0+),

where D is the renormalized denominator.  Since G0_ret in 3D is
-exp(ikr)/(4 pi r), the scattered wave is f exp(ikr)/r at every radius with
the isotropic (pure s-wave) amplitude

    f(k) = -1 / (kappa_B + i k),        kappa_B = sqrt(-E_B),

so |f|^2 = 1/(kappa_B^2 + k^2) and sigma = 4 pi |f|^2.  The amplitude's
analytic continuation has a pole exactly at k = i kappa_B, the bound state.

Branch policy.  The retarded prescription sqrt(-E - i0) = -ik forces the
"+ik" sign above, and only that sign satisfies the optical theorem
Im f = k sigma / (4 pi).  The opposite convention f = -1/(kappa_B - ik)
circulates as well; it has the same modulus (so the cross section is
unaffected) but violates unitarity as written.  The ``policy`` argument (or
the DELTAGREEN_BRANCH_POLICY environment variable) selects "unitary"
(default) or "paper" for side-by-side comparison;
:func:`optical_theorem_residual` is the arbiter between them.

One dimension: the same construction with G0_ret = exp(ik|x|)/(2ik) gives
the transmission probability T = k^2/(k^2 + lambda^2/4) and R = 1 - T;
only lambda^2 enters, so attraction and repulsion transmit identically.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, IllegalSpecError, UnsupportedDimError
from .greenfn import ComplexEnergy, SpatialPoint, g0_retarded
from .renorm import FROM_BOUND_STATE, REN_3D, CouplingSpec, renormalized_denominator

BRANCH_POLICY_ENV = "DELTAGREEN_BRANCH_POLICY"
POLICIES = ("unitary", "paper")

_FOUR_PI = 4.0 * math.pi


def resolve_policy(policy: str | None = None) -> str:
    """Explicit argument beats the environment; default is "unitary"."""
    p = policy if policy is not None else os.environ.get(BRANCH_POLICY_ENV, "unitary")
    if p not in POLICIES:
        raise IllegalSpecError(
            "branch policy must be 'unitary' or 'paper'", policy=str(p)
        )
    return p


@dataclass(frozen=True)
class ScatteringAmplitude:
    """Isotropic s-wave amplitude f(k), units of length."""

    f: complex
    k: float
    isotropic: bool = True


@dataclass(frozen=True, eq=False)
class WaveField:
    """Evaluable scattering wavefunction psi(x) at fixed momentum."""

    k: float
    dim: int
    evaluator: Callable[[SpatialPoint], complex]

    def __call__(self, x: SpatialPoint) -> complex:
        return self.evaluator(x)


def _kappa_b(e_b: float) -> float:
    e_b = float(e_b)
    if not (e_b < 0.0) or not math.isfinite(e_b):
        raise DomainError("bound-state energy must be negative", e_b=e_b)
    return math.sqrt(-e_b)


def amplitude_denominator(k: complex, e_b: float, policy: str | None = None) -> complex:
    """kappa_B + ik (unitary) or kappa_B - ik (paper); -1/f, continued in k.

    Shared by :func:`amplitude3d` and the pole-duality check that continues
    f to complex k: |amplitude_denominator(i kappa_B, E_B)| = 0 at the bound
    state.
    """
    kb = _kappa_b(e_b)
    sign = 1.0 if resolve_policy(policy) == "unitary" else -1.0
    return kb + sign * 1j * complex(k)


def amplitude3d(k: float, e_b: float, policy: str | None = None) -> ScatteringAmplitude:
    """Scattering amplitude of a 3D contact potential with bound state E_B."""
    k = float(k)
    if not (k > 0.0) or not math.isfinite(k):
        raise DomainError("momentum must be positive", k=k)
    return ScatteringAmplitude(f=-1.0 / amplitude_denominator(k, e_b, policy), k=k)


def cross_section_total(k: float, e_b: float) -> float:
    """sigma = 4 pi |f|^2 = 4 pi / (kappa_B^2 + k^2); branch-independent."""
    k = float(k)
    if not (k > 0.0) or not math.isfinite(k):
        raise DomainError("momentum must be positive", k=k)
    kb = _kappa_b(e_b)
    return _FOUR_PI / (kb * kb + k * k)


def optical_theorem_residual(k: float, e_b: float, policy: str | None = None) -> float:
    """Im f(k, theta=0) - k sigma/(4 pi): zero iff the amplitude is unitary.

    Closed form: 0 under the unitary policy, -2k/(kappa_B^2 + k^2) under the
    "paper" sign.
    """
    f = amplitude3d(k, e_b, policy).f
    return f.imag - k * cross_section_total(k, e_b) / _FOUR_PI


def _check_scatter_spec(spec: CouplingSpec) -> None:
    if spec.variant not in (REN_3D, FROM_BOUND_STATE):
        raise IllegalSpecError(
            "3D scattering needs a renormalized 3D coupling or a bound-state spec",
            variant=spec.variant,
        )


def scattered_wave(
    k: float,
    spec: CouplingSpec,
    x: SpatialPoint,
    policy: str | None = None,
    dim: int = 3,
) -> complex:
    """Exact scattering wavefunction psi(x) = exp(ikz) + G0_ret(x, 0)/D.

    The incident wave travels along +z (the last coordinate).  Under the
    "paper" policy the denominator is conjugated, reproducing that sign of
    the amplitude at every radius.
    """
    if dim != 3:
        raise UnsupportedDimError("scattered_wave is implemented for D=3", dim=dim)
    k = float(k)
    if not (k > 0.0) or not math.isfinite(k):
        raise DomainError("momentum must be positive", k=k)
    _check_scatter_spec(spec)
    if not isinstance(x, SpatialPoint):
        x = SpatialPoint(tuple(x))
    d = renormalized_denominator(3, ComplexEnergy(k * k, retarded=True), spec).value
    if resolve_policy(policy) == "paper":
        d = d.conjugate()
    origin = SpatialPoint.of(0.0, 0.0, 0.0)
    z = x.coords[2]
    return cmath.exp(1j * k * z) + g0_retarded(3, k, x, origin).value / d


def wave_field(
    k: float, spec: CouplingSpec, policy: str | None = None
) -> WaveField:
    """Package :func:`scattered_wave` as an immutable evaluator."""
    k = float(k)
    if not (k > 0.0) or not math.isfinite(k):
        raise DomainError("momentum must be positive", k=k)
    _check_scatter_spec(spec)
    pol = resolve_policy(policy)

    def evaluate(x: SpatialPoint) -> complex:
        return scattered_wave(k, spec, x, policy=pol)

    return WaveField(k=k, dim=3, evaluator=evaluate)


def transmission1d(k: float, lam: float) -> tuple[float, float]:
    """Transmission and reflection probabilities of a 1D delta barrier/well.

    T = k^2 / (k^2 + lambda^2/4) and R = 1 - T (unitarity holds exactly, and
    T depends on lambda only through lambda^2).  lambda = 0 transmits fully.
    """
    k = float(k)
    lam = float(lam)
    if not (k > 0.0) or not math.isfinite(k):
        raise DomainError("momentum must be positive", k=k)
    if not math.isfinite(lam):
        raise DomainError("coupling must be finite", lam=lam)
    t = k * k / (k * k + 0.25 * lam * lam)
    return t, 1.0 - t
