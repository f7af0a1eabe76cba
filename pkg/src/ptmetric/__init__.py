"""Metric operators, difference measures and Hermitian dilations for a
two-level non-Hermitian Hamiltonian family with parity-time symmetry."""

from .canonical import (
    CanonicalD,
    EquivalenceReport,
    JordanFrame,
    TwoAngleFrame,
    ep_canonical_d,
    ep_equivalence_check,
    ep_jordan_frame,
    equivalence_check,
    reconstruct_metric,
    solve_canonical_d,
    two_angle_frame,
)
from .dilation import (
    DilationBundle,
    EvolutionTrace,
    assemble_dilated,
    dilated_propagator,
    evolve_and_compare,
    min_transition_probability,
    reference_states,
    tau_from_metric,
)
from .errors import (
    ConditionNotMetError,
    DegenerateAngleError,
    DivisionByZeroError,
    ExceptionalPointError,
    FrameSingularError,
    IntertwiningViolationError,
    InvalidParameterError,
    NotExceptionalError,
    NotHermitianError,
    NotInvertibleError,
    NotPositiveError,
    PatternMismatchError,
    PtError,
)
from .measures import (
    Delta1Report,
    Delta2Report,
    EfficiencyReport,
    delta1,
    delta2,
    delta2_lower_bound,
    dilation_efficiency,
    efficiency_relation,
    l1_norm,
)
from .metric import (
    Definiteness,
    HermitianMetric,
    MetricFamilyParams,
    MetricSolutionSpace,
    classify_definiteness,
    family_eigenvalues,
    family_gap,
    family_metric,
    find_positive_metric,
    solve_intertwining_space,
)
from .model import (
    DEFAULT_EP_TOL,
    EigenSystem,
    Phase,
    PhaseClass,
    PtParams,
    build_hamiltonian,
    check_pt_symmetry,
    classify_phase,
    eigensystem,
)

__version__ = "0.1.0"
