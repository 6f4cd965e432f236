"""schattenkit: Schatten quasi-norms, weighted matrix Lp norms, strip
interpolation certificates, and sandwiched Renyi divergences, with a
seeded randomized verification harness."""

from .errors import (
    ConfigError,
    ConvergenceFailureError,
    DimensionMismatchError,
    FaithfulnessLostError,
    IncompatibleStateError,
    InvalidExponentError,
    LogOfZeroError,
    NonHermitianError,
    OutsideStripError,
    ParseError,
    SchattenKitError,
    SingularPowerError,
    ZeroInputError,
)
from .families import (
    Const,
    ExpAffine,
    FamilyProduct,
    FamilySum,
    MatrixPower,
    Polynomial,
    ScalarScaled,
    cauchy_riemann_defect,
    evaluate,
)
from .harness import SuiteConfig, VerificationReport, run_suite, suite_names
from .matio import load_matrix, load_report, save_matrix, save_report
from .norms import factorize, p_theta, schatten_norm
from .renyi import (
    BlockPartition,
    ConditionalExpectation,
    InequalityCheck,
    StatePair,
    TensorFactor,
    TrivialSubalgebra,
    classical_renyi_divergence,
    conditional_expectation,
    dpi_check,
    equality_condition_check,
    monotonicity_check,
    partial_trace,
    restrict_state,
    sandwiched_divergence,
    state_pair,
)
from .sampling import sample_faithful_state, trial_rng
from .spectral import (
    SpectralDecomposition,
    hermitian_eigen,
    matrix_power,
    polar,
    singular_values,
)
from .states import FaithfulState, faithful_state, maximally_mixed
from .strip import (
    BoundaryNormProfile,
    CertificateReport,
    QuadratureSpec,
    hirschman_check,
    hirschman_kernel,
    kernel_mass,
    product_power_check,
    three_lines_check,
)
from .weighted import (
    OperatorMap,
    asymmetric_weighted_norm,
    extremal_witness,
    modular_flow,
    operator_interp_norm,
    weighted_norm,
)

__version__ = "0.1.0"

__all__ = [
    "BlockPartition",
    "BoundaryNormProfile",
    "CertificateReport",
    "ConditionalExpectation",
    "ConfigError",
    "Const",
    "ConvergenceFailureError",
    "DimensionMismatchError",
    "ExpAffine",
    "FaithfulState",
    "FaithfulnessLostError",
    "FamilyProduct",
    "FamilySum",
    "IncompatibleStateError",
    "InequalityCheck",
    "InvalidExponentError",
    "LogOfZeroError",
    "MatrixPower",
    "NonHermitianError",
    "OperatorMap",
    "OutsideStripError",
    "ParseError",
    "Polynomial",
    "QuadratureSpec",
    "ScalarScaled",
    "SchattenKitError",
    "SingularPowerError",
    "SpectralDecomposition",
    "StatePair",
    "SuiteConfig",
    "TensorFactor",
    "TrivialSubalgebra",
    "VerificationReport",
    "ZeroInputError",
    "asymmetric_weighted_norm",
    "cauchy_riemann_defect",
    "classical_renyi_divergence",
    "conditional_expectation",
    "dpi_check",
    "equality_condition_check",
    "evaluate",
    "extremal_witness",
    "factorize",
    "faithful_state",
    "hermitian_eigen",
    "hirschman_check",
    "hirschman_kernel",
    "kernel_mass",
    "load_matrix",
    "load_report",
    "matrix_power",
    "maximally_mixed",
    "modular_flow",
    "monotonicity_check",
    "operator_interp_norm",
    "p_theta",
    "partial_trace",
    "polar",
    "product_power_check",
    "restrict_state",
    "run_suite",
    "sample_faithful_state",
    "sandwiched_divergence",
    "save_matrix",
    "save_report",
    "schatten_norm",
    "singular_values",
    "state_pair",
    "suite_names",
    "three_lines_check",
    "trial_rng",
    "weighted_norm",
]
