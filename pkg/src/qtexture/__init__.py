"""Quantifiers, free operations, and a falsification harness for
quantum-state texture."""

from .channels import (
    Diagnostic,
    Freeness,
    KrausChannel,
    apply,
    certify_free,
    fourier_dephasing,
    fourier_replace,
    free_unitary_mixture,
    is_cptp,
    is_free,
)
from .errors import (
    DimensionMismatch,
    IncompleteChannel,
    IndexOutOfRange,
    InvalidDimension,
    InvalidRank,
    InvalidSize,
    NonpositiveTemperature,
    NotHermitian,
    NotPSD,
    ParameterOutOfRange,
    QTextureError,
    TraceNotOne,
    UnknownMeasure,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    hermitian_eig,
    psd_sqrt,
    support_projector,
    trace_norm,
)
from .measures import (
    MEASURES,
    MeasureReport,
    RobustnessResult,
    geometric_lower_bound,
    get_measure,
    measure_all,
    relative_entropy,
    rugosity,
    texture_bures,
    texture_fidelity,
    texture_geometric,
    texture_geometric_pure,
    texture_l1,
    texture_relative_entropy,
    texture_robustness,
    texture_trace,
    textureless_overlap,
    uhlmann_fidelity,
)
from .roof import (
    EnsembleDecomposition,
    RoofResult,
    ensemble_average,
    random_ensemble,
    roof_minimize,
    spectral_ensemble,
)
from .states import (
    DensityMatrix,
    HamiltonianSpec,
    PureState,
    bell_state,
    coherent_gibbs_ket,
    fourier_state,
    gibbs_state,
    random_density,
    random_pure,
    sigma_alpha,
    tau_alpha,
    textureless_state,
    validate_density,
)

__version__ = "0.1.0"
