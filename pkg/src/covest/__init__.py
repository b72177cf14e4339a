"""Covariant estimation of an unknown phase and of an unknown SU(2) action."""

from .integrals import (
    QuadratureSpec,
    class_integral,
    phase_error_kernel,
    su2_error_kernel,
    su2_single_irrep_integral,
)
from .phase import (
    PhaseDesign,
    PhaseInputState,
    SeedMatrix,
    asymptotic_error,
    bdm_input,
    min_covariant_error,
    optimal_input,
    optimal_seed,
    phase_error,
)
from .simulate import (
    SimConfig,
    SimResult,
    outcome_density_phase,
    outcome_density_su2_class,
    simulate,
)
from .su2 import (
    GroupElement,
    MultiplicitySpectrum,
    character,
    class_angle,
    class_angles,
    distance,
    from_matrix,
    haar_matrices,
    haar_sample,
    irrep_matrix,
    irrep_matrix_batch,
    make_group_element,
    multiplicity_spectrum,
)
from .su2_design import (
    BlockFeasibility,
    FeasibilityReport,
    Su2BlockAmplitudes,
    Su2Design,
    asymptotic_error_su2,
    brute_force_su2_error,
    design_optimal,
    min_su2_error_odd,
    self_entanglement_feasible,
    single_irrep_error,
    su2_error_even,
    su2_error_odd,
)

__version__ = "0.1.0"

__all__ = [
    "GroupElement",
    "MultiplicitySpectrum",
    "character",
    "class_angle",
    "class_angles",
    "distance",
    "from_matrix",
    "haar_matrices",
    "haar_sample",
    "irrep_matrix",
    "irrep_matrix_batch",
    "make_group_element",
    "multiplicity_spectrum",
    "PhaseDesign",
    "PhaseInputState",
    "SeedMatrix",
    "asymptotic_error",
    "bdm_input",
    "min_covariant_error",
    "optimal_input",
    "optimal_seed",
    "phase_error",
    "QuadratureSpec",
    "class_integral",
    "phase_error_kernel",
    "su2_error_kernel",
    "su2_single_irrep_integral",
    "BlockFeasibility",
    "FeasibilityReport",
    "Su2BlockAmplitudes",
    "Su2Design",
    "asymptotic_error_su2",
    "brute_force_su2_error",
    "design_optimal",
    "min_su2_error_odd",
    "self_entanglement_feasible",
    "single_irrep_error",
    "su2_error_even",
    "su2_error_odd",
    "SimConfig",
    "SimResult",
    "outcome_density_phase",
    "outcome_density_su2_class",
    "simulate",
    "__version__",
]
