"""Exact swap gates in the two-qubit anisotropic Heisenberg exchange model:
schedule design and verification, Gaussian-noise fidelity analysis, and a
quantum-dot pseudospin parameter mapper."""

from .dots import (
    CouplingSpec,
    DotSpec,
    EffectiveParams,
    PseudospinLevels,
    SwapFeasibility,
    effective_params,
    map_to_swap,
    perturbed_levels,
)
from .dynamics import (
    PhaseTriple,
    PulseSchedule,
    Segment,
    Spectrum,
    XxzParams,
    accumulate_phases,
    dense_exponential_oracle,
    eigensystem,
    hamiltonian_matrix,
    propagate,
    propagator_matrix,
    reduced_determinant_closed_form,
)
from .errors import SingularityError, ValidationError
from .fidelity import (
    DEFAULT_SAMPLES,
    FidelityGridRow,
    FluctuationSpec,
    McEstimate,
    SWAP_POINT,
    average_fidelity_analytic,
    average_fidelity_mc,
    fidelity_grid,
    gate_fidelity,
    state_ensemble_fidelity,
)
from .seeding import DEFAULT_SEED
from .states import (
    NORM_TOL,
    PURITY_TOL,
    QubitAmplitudes,
    QubitDensity,
    TwoQubitPureState,
    make_product_state,
    purity_determinant,
    reduce_to_qubit,
)
from .swaps import (
    OutcomePrediction,
    ScanRow,
    SWAP_MATRIX,
    SwapKind,
    SwapPlan,
    VerificationReport,
    classify_outcome,
    delta_feasibility_scan,
    is_swap_point,
    solve_schedule,
    verify_schedule,
    verify_swap,
)

__all__ = [
    "CouplingSpec",
    "DEFAULT_SAMPLES",
    "DEFAULT_SEED",
    "DotSpec",
    "EffectiveParams",
    "FidelityGridRow",
    "FluctuationSpec",
    "McEstimate",
    "NORM_TOL",
    "OutcomePrediction",
    "PURITY_TOL",
    "PhaseTriple",
    "PseudospinLevels",
    "PulseSchedule",
    "QubitAmplitudes",
    "QubitDensity",
    "SWAP_MATRIX",
    "SWAP_POINT",
    "ScanRow",
    "Segment",
    "SingularityError",
    "Spectrum",
    "SwapFeasibility",
    "SwapKind",
    "SwapPlan",
    "TwoQubitPureState",
    "ValidationError",
    "VerificationReport",
    "XxzParams",
    "accumulate_phases",
    "average_fidelity_analytic",
    "average_fidelity_mc",
    "classify_outcome",
    "delta_feasibility_scan",
    "dense_exponential_oracle",
    "effective_params",
    "eigensystem",
    "fidelity_grid",
    "gate_fidelity",
    "hamiltonian_matrix",
    "is_swap_point",
    "make_product_state",
    "map_to_swap",
    "perturbed_levels",
    "propagate",
    "propagator_matrix",
    "purity_determinant",
    "reduce_to_qubit",
    "reduced_determinant_closed_form",
    "solve_schedule",
    "state_ensemble_fidelity",
    "verify_schedule",
    "verify_swap",
]

__version__ = "0.1.0"
