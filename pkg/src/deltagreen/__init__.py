"""Exact Green's functions, bound states, and scattering for delta potentials.

Everything is expressed in units hbar = 2m = 1: energies carry 1/length^2,
momenta 1/length.  Dimensions 1 through 3 are supported end to end;
dimension 4 appears only in the divergence report that shows why no
renormalized contact interaction exists there.
"""

from .errors import (
    AtPoleError,
    BranchAmbiguityError,
    BranchCutError,
    CoincidentPointsError,
    CouplingBlowupError,
    DeltaGreenError,
    DispersionError,
    DivergentBubbleError,
    DomainError,
    IllegalSpecError,
    InsufficientBoxError,
    NonConvergenceError,
    PoleCrossingError,
    SpecValidationError,
    TailBoundExceededError,
    UnsupportedDimError,
    ZeroCouplingError,
)
from .greenfn import ComplexEnergy, GreenValue, SpatialPoint, distance, g0, g0_retarded
from .pointgreen import (
    BoundState,
    DeltaCenter,
    MMatrix,
    bound_states,
    center,
    green,
    m_matrix,
    residue_wavefunction,
)
from .renorm import (
    CouplingSpec,
    Cutoff,
    DenominatorValue,
    FriedmanRow,
    bare_1d,
    bare_from_renormalized,
    bubble_regularized,
    friedman_report,
    from_bound_state,
    renormalized_2d,
    renormalized_3d,
    renormalized_denominator,
    rg_shift,
    transmutation_energy,
)
from .scatter import (
    ScatteringAmplitude,
    WaveField,
    amplitude3d,
    amplitude_denominator,
    cross_section_total,
    optical_theorem_residual,
    scattered_wave,
    transmission1d,
    wave_field,
)

__version__ = "0.1.0"

__all__ = [
    "AtPoleError",
    "BoundState",
    "BranchAmbiguityError",
    "BranchCutError",
    "CoincidentPointsError",
    "ComplexEnergy",
    "CouplingBlowupError",
    "CouplingSpec",
    "Cutoff",
    "DeltaCenter",
    "DeltaGreenError",
    "DenominatorValue",
    "DispersionError",
    "DivergentBubbleError",
    "DomainError",
    "FriedmanRow",
    "GreenValue",
    "IllegalSpecError",
    "InsufficientBoxError",
    "MMatrix",
    "NonConvergenceError",
    "PoleCrossingError",
    "ScatteringAmplitude",
    "SpatialPoint",
    "SpecValidationError",
    "TailBoundExceededError",
    "UnsupportedDimError",
    "WaveField",
    "ZeroCouplingError",
    "amplitude3d",
    "amplitude_denominator",
    "bare_1d",
    "bare_from_renormalized",
    "bound_states",
    "bubble_regularized",
    "center",
    "cross_section_total",
    "distance",
    "friedman_report",
    "from_bound_state",
    "g0",
    "g0_retarded",
    "green",
    "m_matrix",
    "optical_theorem_residual",
    "renormalized_2d",
    "renormalized_3d",
    "renormalized_denominator",
    "residue_wavefunction",
    "rg_shift",
    "scattered_wave",
    "transmission1d",
    "transmutation_energy",
    "wave_field",
    "__version__",
]
