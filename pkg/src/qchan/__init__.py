"""Bistochastic quantum channel toolkit.

Builds the depolarizing, phase damping and Weyl-covariant mixture channels,
computes entropy functionals, optimizes output entropy over pure states, and
numerically verifies the decomposition, monotonicity and additivity claims
about these channels at small Hilbert-space dimension.
"""

__version__ = "0.1.0"

from .channels import (
    ChannelChecks,
    DepolarizingParams,
    Eq9Decomposition,
    Eq12Report,
    KrausChannel,
    MixtureWeights,
    PauliQubitParams,
    PhaseDampingParams,
    SchurReport,
    choi_distance,
    channels_equal,
    conditional_expectation,
    depolarizing,
    eq9_decomposition,
    eq12_representation,
    identity_channel,
    kraus_channel,
    mixture_of_unitaries,
    pauli_qubit,
    phase_damping,
    qubit_factorize,
    random_channel,
    schur_matrix,
    structural_checks,
)
from .entropy import (
    CapacityBound,
    EntropyValue,
    c1_upper_bound,
    covariant_c1,
    holevo_chi,
    output_p_norm_value,
    relative_entropy,
    subnormalized_entropy,
    von_neumann,
)
from .errors import (
    CapacityError,
    NotCompletelyPositiveError,
    NotPositiveError,
    NumericalError,
    QchanError,
    StructureError,
    UsageError,
    ValidationError,
)
from .linalg import (
    HermitianEigen,
    hermitian_eig,
    matrix_function_hermitian,
    partial_trace,
    tensor_product,
)
from .optimize import (
    OptimizationResult,
    entropy_gradient,
    max_output_purity,
    min_output_entropy,
    output_entropy,
)
from .states import (
    DensityMatrix,
    PureState,
    StateEnsemble,
    density_from_matrix,
    maximally_mixed,
    pure_to_density,
    random_density,
    random_pure,
    random_unitary,
)
from .verify import (
    check_additivity,
    check_eq3,
    check_eq5,
    check_eq9,
    check_eq12,
    check_multiplicativity,
    entropy_increase_suite,
    gradient_suite,
    intertwining_check,
    monotonicity_suite,
    resolution_of_identity_check,
    verify_prop1,
    verify_prop2,
    verify_prop3,
    verify_prop4,
    verify_theorem,
)
from .weyl import (
    OrthogonalResolution,
    SubgroupFamily,
    WeylSystem,
    all_order_l_subgroups,
    covering_report,
    diagonal_subgroup,
    fixed_point_resolution,
    phase_subgroup,
    weyl_system,
)
