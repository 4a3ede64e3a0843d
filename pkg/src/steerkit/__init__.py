"""Correlation-tensor criteria for two-qubit steering, entanglement and
Bell nonlocality, verified by spherical quadrature."""

from .criteria import (
    Criterion,
    CriterionVerdict,
    NoDetection,
    NonMonotone,
    all_criteria,
    bell_criterion,
    chsh_criterion,
    critical_noise,
    entanglement_criterion,
    steering_criterion,
    tensor_norm_sq,
)
from .families import (
    NoiseFamily,
    ParameterOutOfRange,
    SweepRecord,
    family_from_name,
    noisy_schmidt,
    noisy_schmidt_family,
    sweep,
    werner,
    werner_family,
)
from .oracle import (
    ClippedLinearResponse,
    ConstantResponse,
    DegenerateTensor,
    HiddenStateModel,
    ModelComponent,
    NsInequalityCheck,
    SignResponse,
    chsh_ns_max,
    chsh_ns_value,
    eval_ns_correlation,
    lhv_bound,
    model_state_overlap,
    model_state_overlap_mc,
    norm_eq_analytic,
    ns_bound,
    ns_correlation_fn,
    random_model,
    saturating_model,
    verify_ns_inequality,
)
from .sphere import (
    SphereGrid,
    abs_cos_integral,
    inner_product,
    integrate,
    projection_norm_constant,
    rotation_to,
    sphere_grid,
    uniform_sphere,
    verify_orthogonality,
)
from .states import (
    ConditionalState,
    CorrelationTensor,
    DensityMatrix4,
    NonRealComponent,
    NotHermitian,
    NotPositive,
    StateValidationError,
    TraceNotOne,
    conditional_state,
    correlation_fn,
    correlation_function,
    joint_probability,
    pauli_expansion,
    random_density_matrix,
    random_unit_vector,
    state_from_tensor,
    validate_state,
)
from .svd3 import NoConvergence, SchmidtForm, svd3

__version__ = "0.1.0"

__all__ = [
    "ClippedLinearResponse",
    "ConditionalState",
    "ConstantResponse",
    "CorrelationTensor",
    "Criterion",
    "CriterionVerdict",
    "DegenerateTensor",
    "DensityMatrix4",
    "HiddenStateModel",
    "ModelComponent",
    "NoConvergence",
    "NoDetection",
    "NoiseFamily",
    "NonMonotone",
    "NonRealComponent",
    "NotHermitian",
    "NotPositive",
    "NsInequalityCheck",
    "ParameterOutOfRange",
    "SchmidtForm",
    "SignResponse",
    "SphereGrid",
    "StateValidationError",
    "SweepRecord",
    "TraceNotOne",
    "abs_cos_integral",
    "all_criteria",
    "bell_criterion",
    "chsh_criterion",
    "chsh_ns_max",
    "chsh_ns_value",
    "conditional_state",
    "correlation_fn",
    "correlation_function",
    "critical_noise",
    "entanglement_criterion",
    "eval_ns_correlation",
    "family_from_name",
    "inner_product",
    "integrate",
    "joint_probability",
    "lhv_bound",
    "model_state_overlap",
    "model_state_overlap_mc",
    "noisy_schmidt",
    "noisy_schmidt_family",
    "norm_eq_analytic",
    "ns_bound",
    "ns_correlation_fn",
    "pauli_expansion",
    "projection_norm_constant",
    "random_density_matrix",
    "random_model",
    "random_unit_vector",
    "rotation_to",
    "saturating_model",
    "sphere_grid",
    "state_from_tensor",
    "steering_criterion",
    "svd3",
    "sweep",
    "tensor_norm_sq",
    "uniform_sphere",
    "validate_state",
    "verify_ns_inequality",
    "verify_orthogonality",
    "werner",
    "werner_family",
]
