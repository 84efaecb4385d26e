"""Binary coherent-state discrimination toolkit.

Error probabilities for receivers distinguishing |alpha> from |-alpha>:
the quantum floor, the homodyne (best Gaussian) limit, and near-optimal
photon-counting receivers built from displacement, squeezing, and on/off
detection, with their transcendental parameter optimizations, a truncated
number-basis oracle, multimode Gaussian conditioning algebra, and a
click-level Monte Carlo. The ``bpskrx`` console script exposes sweeps,
optimizer queries, landscape verification, simulation, and SVG plotting.
"""

from .core import (
    BinaryEnsemble,
    BracketError,
    ConvergenceError,
    CsvFormatError,
    DetectorModel,
    DimensionMismatchError,
    NotPureError,
    ReceiverResult,
    RECEIVER_TAGS,
    SingularMatrixError,
    TruncationError,
    UnsupportedConfigurationError,
)
from .gaussian import (
    ConditionalOutput,
    ConditionedState,
    GaussianMeasurementSpec,
    GaussianPovm,
    GaussianState,
    SymplecticOp,
    apply_gaussian_unitary,
    bayes_error_from_contrast,
    bayes_error_gaussian,
    beamsplitter,
    binary_conditional_output,
    coherent_state,
    concentrate_displacement,
    condition_on_partial_measurement,
    contrast_factor,
    measurement_cov,
    phase_rotation,
    povm_from_physical_model,
    pure_normal_form,
    random_symplectic,
    squeezer,
    symplectic_form,
    tensor,
    vacuum,
)
from .fock import (
    FockOperator,
    FockVector,
    coherent_vector,
    displacement_matrix,
    off_operator,
    on_operator,
    receiver_error_fock,
    squeeze_matrix,
)
from .montecarlo import (
    McConfig,
    McEstimate,
    RNG_ID,
    derive_point_seed,
    simulate_type2,
    sweep_montecarlo,
)
from .optimize import (
    LandscapePoint,
    LandscapeSummary,
    RootResult,
    displaced_squeezed_error,
    find_root_bracketed,
    solve_type1_params,
    solve_type2_gamma,
    solve_type2_gamma_imperfect,
    type1_residuals,
    verify_gaussian_optimum,
)
from .receivers import (
    DEFAULT_ALPHA_SQ_GRID,
    helstrom,
    homodyne_limit,
    homodyne_limit_attenuated,
    kennedy_error,
    kennedy_raw_error,
    mean_intensity,
    type1_error,
    type2_error,
    type2_imperfect_error,
)

__version__ = "0.1.0"
