"""Block subspace expansion methods for leading invariant subspaces of
symmetric operators, with sharp convergence-bound calculators and a
reproducible experiment harness."""

__version__ = "0.1.0"

from .errors import (
    DegenerateIntersection,
    ExpanderError,
    GenericityFailure,
    InvalidModel,
    NoSpectralGap,
    NumericalFailure,
    RankCollapse,
    SingularFilter,
    ZeroMatrix,
    ZeroProjection,
)
from .linalg import (
    AngleProfile,
    RankTolerance,
    Subspace,
    deflect,
    orthonormal_complement,
    orthonormalize,
    principal_angles,
    project,
    pseudo_inverse,
    subspace_sum,
    tangent_norm,
    tangent_profile,
    tangent_upper_bound,
)
from .models import (
    HermitianOperator,
    ModelParams,
    Spectrum,
    apply,
    build_spectrum,
    gaussian_subspace,
    target_subspace,
)
from .expansion import (
    ExpansionTrajectory,
    MethodKind,
    TrajectoryRecord,
    computable_step,
    jia_residual_step,
    krylov_step,
    optimal_step,
    refined_rr_replacement,
    rr_replacement,
    run_method,
)
from .bounds import (
    BoundCurve,
    Coefficients,
    ScaledChebyshev,
    Shifted,
    chebyshev_T,
    construct_Hp,
    kt_bound_curve,
    mu_d,
    poly_filter_factor,
    vt_bound_curve,
)
from .harness import (
    ExperimentConfig,
    RunReport,
    emit_csv,
    emit_json,
    run_experiment,
    validate_config,
)
from .estimator import BlockSubspaceExpander

__all__ = [
    "__version__",
    "ExpanderError",
    "ZeroMatrix",
    "DegenerateIntersection",
    "ZeroProjection",
    "InvalidModel",
    "NoSpectralGap",
    "RankCollapse",
    "GenericityFailure",
    "SingularFilter",
    "NumericalFailure",
    "RankTolerance",
    "Subspace",
    "AngleProfile",
    "orthonormalize",
    "pseudo_inverse",
    "orthonormal_complement",
    "principal_angles",
    "tangent_profile",
    "tangent_upper_bound",
    "project",
    "deflect",
    "subspace_sum",
    "tangent_norm",
    "Spectrum",
    "ModelParams",
    "HermitianOperator",
    "build_spectrum",
    "gaussian_subspace",
    "apply",
    "target_subspace",
    "MethodKind",
    "TrajectoryRecord",
    "ExpansionTrajectory",
    "krylov_step",
    "optimal_step",
    "rr_replacement",
    "refined_rr_replacement",
    "computable_step",
    "jia_residual_step",
    "run_method",
    "BoundCurve",
    "Shifted",
    "ScaledChebyshev",
    "Coefficients",
    "chebyshev_T",
    "mu_d",
    "vt_bound_curve",
    "construct_Hp",
    "kt_bound_curve",
    "poly_filter_factor",
    "ExperimentConfig",
    "RunReport",
    "validate_config",
    "run_experiment",
    "emit_csv",
    "emit_json",
    "BlockSubspaceExpander",
]
