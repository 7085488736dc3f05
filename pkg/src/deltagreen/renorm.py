"""Cutoff-regularized bubble integrals and coupling renormalization.

The divergence a contact potential produces is the coincident-point limit of
the free Green's function, i.e. the momentum-space bubble

    B_D(K, Lambda) = int_{|k| < Lambda} d^D k / (2 pi)^D  1 / (k^2 + K^2),

with K = sqrt(-E) > 0, so that G0(E; 0, 0) = -B_D(K, Lambda -> inf).  Closed
forms (all monotone increasing in Lambda, decreasing in K):

    D=1:  arctan(Lambda/K) / (pi K)                  -> 1/(2K), finite
    D=2:  ln((Lambda^2 + K^2)/K^2) / (4 pi)          -> log-divergent
    D=3:  (Lambda - K arctan(Lambda/K)) / (2 pi^2)   -> linearly divergent
    D=4:  (Lambda^2 - K^2 ln((Lambda^2+K^2)/K^2)) / (16 pi^2)

The denominator of the one-center Green's function is 1/lambda + B_D.  In
D=2 and D=3 it stays finite as Lambda -> inf only if the bare coupling runs:

    D=2:  1/lambda_R = 1/lambda + ln(Lambda^2/mu^2) / (4 pi)
    D=3:  1/lambda_R = 1/lambda + Lambda / (2 pi^2)

yielding the renormalized denominators

    D=1:  1/lambda + 1/(2 kappa)
    D=2:  -ln(kappa/kappa_B) / (2 pi)      (kappa_B^2 = -E_B)
    D=3:  1/lambda_R - kappa/(4 pi) = (kappa_B - kappa)/(4 pi)  for lambda_R > 0.

In D=2 the arbitrary scale mu drops out of physics: the bound-state energy

    E_B = -mu^2 exp(4 pi / lambda_R)

is invariant under the flow 1/lambda_R' = 1/lambda_R - ln(mu'^2/mu^2)/(4 pi),
so a dimensionless coupling trades itself for one dimensionful scale.  All
renormalized couplings are therefore canonicalized to E_B internally.  In
D=4 the K-dependent part of the bubble grows without bound and cannot be
absorbed into any redefinition of lambda; :func:`friedman_report` tabulates
that obstruction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    CouplingBlowupError,
    DivergentBubbleError,
    DomainError,
    IllegalSpecError,
    PoleCrossingError,
    UnsupportedDimError,
    ZeroCouplingError,
)
from .greenfn import ComplexEnergy

_FOUR_PI = 4.0 * math.pi
_TWO_PI_SQ = 2.0 * math.pi * math.pi

#: |1/lambda| below this counts as crossing the pole of the coupling map.
INVERSE_COUPLING_TOL = 1e-14

# CouplingSpec variants
BARE_1D = "bare_1d"
REN_2D = "ren_2d"
REN_3D = "ren_3d"
FROM_BOUND_STATE = "from_bound_state"

_VARIANT_DIMS = {
    BARE_1D: (1,),
    REN_2D: (2,),
    REN_3D: (3,),
    FROM_BOUND_STATE: (1, 2, 3),
}


@dataclass(frozen=True)
class CouplingSpec:
    """How a contact interaction is parameterized.

    Use the factory functions :func:`bare_1d`, :func:`renormalized_2d`,
    :func:`renormalized_3d` and :func:`from_bound_state`; the constructor
    itself performs only cross-field validation.
    """

    variant: str
    lam: float | None = None  # bare coupling (D=1)
    lambda_r: float | None = None  # renormalized coupling (D=2, D=3)
    mu: float | None = None  # subtraction scale (D=2), units 1/length
    e_b: float | None = None  # bound-state energy, units 1/length**2

    def legal_for(self, dim: int) -> bool:
        return dim in _VARIANT_DIMS.get(self.variant, ())

    def require_dim(self, dim: int) -> None:
        if not self.legal_for(dim):
            raise IllegalSpecError(
                "coupling variant illegal for this dimension",
                variant=self.variant,
                dim=dim,
            )

    def bound_state_energy(self, dim: int) -> float | None:
        """E_B < 0 if this coupling binds in dimension ``dim``, else None."""
        self.require_dim(dim)
        if self.variant == BARE_1D:
            return -0.25 * self.lam * self.lam if self.lam < 0.0 else None
        if self.variant == REN_2D:
            return transmutation_energy(self)
        if self.variant == REN_3D:
            if self.lambda_r > 0.0:
                kb = _FOUR_PI / self.lambda_r
                return -kb * kb
            return None
        return self.e_b

    def describe(self) -> dict:
        out = {"variant": self.variant}
        for key in ("lam", "lambda_r", "mu", "e_b"):
            v = getattr(self, key)
            if v is not None:
                out[key] = v
        return out


def bare_1d(lam: float) -> CouplingSpec:
    """Bare one-dimensional coupling lambda (attractive if negative)."""
    lam = float(lam)
    if not math.isfinite(lam):
        raise DomainError("bare coupling must be finite", lam=lam)
    if lam == 0.0:
        raise ZeroCouplingError("lambda = 0 is no interaction at all")
    return CouplingSpec(variant=BARE_1D, lam=lam)


def renormalized_2d(lambda_r: float, mu: float) -> CouplingSpec:
    """Renormalized 2D coupling lambda_R at subtraction scale mu > 0."""
    lambda_r = float(lambda_r)
    mu = float(mu)
    if not math.isfinite(lambda_r) or lambda_r == 0.0:
        raise ZeroCouplingError("lambda_R must be finite and nonzero", lambda_r=lambda_r)
    if not (mu > 0.0) or not math.isfinite(mu):
        raise DomainError("subtraction scale mu must be positive", mu=mu)
    return CouplingSpec(variant=REN_2D, lambda_r=lambda_r, mu=mu)


def renormalized_3d(lambda_r: float) -> CouplingSpec:
    """Renormalized 3D coupling; binds only for lambda_R > 0."""
    lambda_r = float(lambda_r)
    if not math.isfinite(lambda_r) or lambda_r == 0.0:
        raise ZeroCouplingError("lambda_R must be finite and nonzero", lambda_r=lambda_r)
    return CouplingSpec(variant=REN_3D, lambda_r=lambda_r)


def from_bound_state(e_b: float) -> CouplingSpec:
    """Parameterize the interaction directly by its bound-state energy E_B < 0."""
    e_b = float(e_b)
    if not (e_b < 0.0) or not math.isfinite(e_b):
        raise DomainError("bound-state energy must be negative", e_b=e_b)
    return CouplingSpec(variant=FROM_BOUND_STATE, e_b=e_b)


@dataclass(frozen=True)
class Cutoff:
    """Sharp momentum cutoff Lambda, units 1/length."""

    lambda_cap: float

    def __post_init__(self):
        v = float(self.lambda_cap)
        if not (v > 0.0) or not math.isfinite(v):
            raise DomainError("cutoff must be positive and finite", lambda_cap=v)
        object.__setattr__(self, "lambda_cap", v)


@dataclass(frozen=True)
class DenominatorValue:
    """Finite renormalized denominator 1/lambda - G0(E; 0, 0)."""

    value: complex
    dim: int
    finite: bool = True


def bubble_regularized(dim: int, K: float, cutoff: Cutoff | None) -> float:
    """Momentum bubble int_{|k|<Lambda} d^Dk/(2pi)^D (k^2+K^2)^(-1), exactly.

    ``cutoff=None`` removes the cutoff; that limit is finite only in D=1
    (value 1/(2K)), otherwise :class:`DivergentBubbleError` is raised.
    """
    K = float(K)
    if not (K > 0.0) or not math.isfinite(K):
        raise DomainError("bubble needs K > 0", K=K)
    if dim not in (1, 2, 3, 4):
        raise UnsupportedDimError("bubble defined for D in {1,2,3,4}", dim=dim)
    if cutoff is None:
        if dim == 1:
            return 0.5 / K
        raise DivergentBubbleError(
            "bubble diverges as the cutoff is removed for D >= 2", dim=dim
        )
    lam_cap = cutoff.lambda_cap
    if dim == 1:
        return math.atan(lam_cap / K) / (math.pi * K)
    if dim == 2:
        return math.log1p((lam_cap / K) ** 2) / _FOUR_PI
    if dim == 3:
        return (lam_cap - K * math.atan(lam_cap / K)) / _TWO_PI_SQ
    return (lam_cap**2 - K**2 * math.log1p((lam_cap / K) ** 2)) / (16.0 * math.pi**2)


def bare_from_renormalized(dim: int, spec: CouplingSpec, cutoff: Cutoff) -> float:
    """Bare coupling lambda(Lambda) reproducing ``spec`` at cutoff Lambda.

    Runs to 0- as the cutoff grows; raises :class:`PoleCrossingError` at
    cutoffs where 1/lambda crosses zero (|1/lambda| <= 1e-14) and the bare
    coupling is undefined.
    """
    if dim not in (2, 3):
        raise UnsupportedDimError("bare coupling runs only in D=2 and D=3", dim=dim)
    spec.require_dim(dim)
    lam_cap = cutoff.lambda_cap
    if dim == 2:
        if spec.variant == REN_2D:
            inv = 1.0 / spec.lambda_r - math.log((lam_cap / spec.mu) ** 2) / _FOUR_PI
        else:  # FROM_BOUND_STATE; mu drops out entirely
            kb2 = -spec.e_b
            inv = -math.log(lam_cap**2 / kb2) / _FOUR_PI
    else:
        if spec.variant == REN_3D:
            inv = 1.0 / spec.lambda_r - lam_cap / _TWO_PI_SQ
        else:
            kb = math.sqrt(-spec.e_b)
            inv = kb / _FOUR_PI - lam_cap / _TWO_PI_SQ
    if abs(inv) <= INVERSE_COUPLING_TOL:
        raise PoleCrossingError(
            "bare coupling undefined at this cutoff (1/lambda crosses 0)",
            dim=dim,
            lambda_cap=lam_cap,
        )
    return 1.0 / inv


def renormalized_denominator(dim: int, energy, spec: CouplingSpec) -> DenominatorValue:
    """Finite denominator D(E) = 1/lambda - G0(E; 0, 0) after renormalization.

    Its unique zero on the negative real axis, when one exists, is the
    bound-state energy.  Renormalized couplings are converted to E_B first,
    so only one physical parameter enters.
    """
    e = ComplexEnergy.of(energy)
    kap = e.kappa
    if dim == 1:
        spec.require_dim(1)
        if spec.variant == BARE_1D:
            val = 1.0 / spec.lam + 0.5 / kap
        else:
            kb = math.sqrt(-spec.e_b)
            val = 0.5 / kap - 0.5 / kb
    elif dim == 2:
        spec.require_dim(2)
        e_b = spec.e_b if spec.variant == FROM_BOUND_STATE else transmutation_energy(spec)
        kb = math.sqrt(-e_b)
        # -(1/4pi) ln(E/E_B) continued off the negative axis via kappa
        val = -cmath.log(kap / kb) / (2.0 * math.pi)
    elif dim == 3:
        spec.require_dim(3)
        if spec.variant == REN_3D:
            val = 1.0 / spec.lambda_r - kap / _FOUR_PI
        else:
            kb = math.sqrt(-spec.e_b)
            val = (kb - kap) / _FOUR_PI
    else:
        raise UnsupportedDimError("denominator defined for D in {1,2,3}", dim=dim)
    return DenominatorValue(value=complex(val), dim=dim)


def transmutation_energy(spec: CouplingSpec) -> float:
    """E_B = -mu^2 exp(4 pi / lambda_R): the dimensionful scale a
    dimensionless 2D coupling transmutes into.  Negative for every
    lambda_R != 0."""
    if spec.variant != REN_2D:
        raise IllegalSpecError(
            "transmutation energy is defined for renormalized 2D couplings",
            variant=spec.variant,
        )
    if spec.lambda_r == 0.0:
        raise ZeroCouplingError("lambda_R = 0 has no transmutation scale")
    try:
        return -spec.mu * spec.mu * math.exp(_FOUR_PI / spec.lambda_r)
    except OverflowError as exc:
        raise DomainError(
            "transmutation energy overflows double precision",
            lambda_r=spec.lambda_r,
            mu=spec.mu,
        ) from exc


def rg_shift(lambda_r: float, mu: float, mu_prime: float) -> float:
    """Move the 2D coupling to a new subtraction scale, keeping physics fixed.

    1/lambda_R' = 1/lambda_R - ln(mu'^2/mu^2)/(4 pi); transmutation_energy is
    invariant under the shift.  Raises :class:`CouplingBlowupError` where
    1/lambda_R' crosses zero.
    """
    lambda_r = float(lambda_r)
    mu = float(mu)
    mu_prime = float(mu_prime)
    if lambda_r == 0.0:
        raise ZeroCouplingError("cannot shift lambda_R = 0")
    if not (mu > 0.0 and mu_prime > 0.0):
        raise DomainError("scales must be positive", mu=mu, mu_prime=mu_prime)
    inv = 1.0 / lambda_r - math.log((mu_prime / mu) ** 2) / _FOUR_PI
    if abs(inv) <= INVERSE_COUPLING_TOL:
        raise CouplingBlowupError(
            "1/lambda_R' vanishes at this scale shift", mu=mu, mu_prime=mu_prime
        )
    return 1.0 / inv


class FriedmanRow(NamedTuple):
    lambda_cap: float
    total_bubble: float
    quadratic_part: float
    nonremovable_part: float


def friedman_report(K: float, cutoffs) -> list[FriedmanRow]:
    """Tabulate the D=4 bubble split into a removable Lambda^2 piece and the
    K-dependent logarithm that no coupling redefinition can absorb.

    total = quadratic_part - nonremovable_part with
    quadratic_part = Lambda^2/(16 pi^2) and
    nonremovable_part = (K^2/16 pi^2) ln((Lambda^2+K^2)/K^2), which grows
    without bound along any increasing cutoff sequence: the no-go for contact
    interactions above three dimensions.
    """
    K = float(K)
    if not (K > 0.0) or not math.isfinite(K):
        raise DomainError("friedman_report needs K > 0", K=K)
    caps = [c if isinstance(c, Cutoff) else Cutoff(c) for c in cutoffs]
    if not caps:
        raise DomainError("cutoff list must be nonempty")
    vals = [c.lambda_cap for c in caps]
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise DomainError("cutoff list must be strictly increasing")
    sixteen_pi2 = 16.0 * math.pi**2
    rows = []
    for c in caps:
        lam_cap = c.lambda_cap
        quad = lam_cap**2 / sixteen_pi2
        nonrem = (K**2 / sixteen_pi2) * math.log1p((lam_cap / K) ** 2)
        rows.append(
            FriedmanRow(
                lambda_cap=lam_cap,
                total_bubble=bubble_regularized(4, K, c),
                quadratic_part=quad,
                nonremovable_part=nonrem,
            )
        )
    return rows
