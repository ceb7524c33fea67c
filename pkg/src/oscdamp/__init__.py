"""oscdamp: input-output analysis of inter-area oscillations in networked
oscillator (power grid) models and sparse wide-area damping control design.

The pipeline: build or load a model (``grid``), remove the mean-angle mode
(``symmetry``), analyze spectra/variance/modes (``analysis``), synthesize
sparse or block-sparse H2 controllers by reweighted ADMM (``sparse_lqr``),
and quantify robustness (``robustness``).  ``oscdamp.cli`` ties it together.
"""

from . import errors
from ._kernels import backend as kernel_backend
from .analysis import (
    ModalTable,
    PsdCurve,
    VarianceReport,
    covariance_spectrum,
    damping_ratio,
    default_grid,
    frequency_hz,
    h2_norm_sq,
    modal_initial_condition,
    modal_table,
    psd,
    psd_response,
    simulate,
)
from .grid import (
    PerformanceWeights,
    PssParameters,
    StateSpaceModel,
    SwingNetwork,
    build_swing_model,
    build_weights,
    embed_pss,
    load_model,
    load_swing,
    save_model,
)
from .lti import (
    EigenDecomposition,
    eig,
    frequency_response,
    solve_lyapunov,
    solve_sylvester,
)
from .robustness import MarginCurve, MarginResult, PerturbationStudy, perturb_and_score, phase_margin
from .sparse_lqr import (
    AdmmOptions,
    AdmmReport,
    FeedbackGain,
    PenaltySpec,
    admm_solve,
    centralized_h2,
    gamma_sweep,
    h2_cost,
    h2_gradient,
    make_penalty,
    polish,
    prox_elementwise,
    prox_group,
    reweight,
)
from .symmetry import (
    ReducedModel,
    SymmetryTransform,
    build_transform,
    gain_to_physical,
    gain_to_reduced,
    reduce_model,
)

__version__ = "0.1.0"
