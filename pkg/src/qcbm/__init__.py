"""Differentiable statevector simulation of quantum-circuit Born machines.

Train a layered hardware-efficient circuit to match a target bitstring
distribution under the Jensen-Shannon divergence, with exact (adjoint or
parameter-shift) and finite-shot gradients, Hessian and quantum Fisher
information analysis, and sweep tooling for locating the critical depth
where training starts to succeed reliably.
"""

from ._kernels import BACKEND_NAME
from .analysis import (
    BoundsReport,
    DepthSummary,
    SweepSummary,
    bounds_report,
    d_c,
    depth_to_bound,
    detect_pc,
    dla_dim,
    gradient_variance_study,
    hessian_spectrum_summary,
    quartiles,
    summarize_depth,
)
from .ansatz import AnsatzLayout, born_distribution, build_layout, param_count, prepare_state
from .diff import (
    gradient_adjoint,
    gradient_param_shift,
    gradient_sampled,
    hessian,
    qfi_matrix,
    qfi_rank,
)
from .divergence import jsd, jsd_grad_q, jsd_hess_q, kld
from .statevec import (
    StateVector,
    apply_entangler,
    apply_rotation,
    init_zero,
    inner_product,
    probabilities,
)
from .targets import (
    SampleFileError,
    TargetSpec,
    bell_ghz_target,
    hep_target_from_samples,
    make_target,
    sparse_target,
    sparsity,
    uniform_target,
    w_target,
)
from .train import (
    AdamState,
    NonFiniteGradientError,
    RunRecord,
    TrainConfig,
    adam_step,
    init_params,
    sample_histogram,
    train_run,
    tts,
)

__version__ = "0.1.0"

__all__ = [
    "AnsatzLayout",
    "AdamState",
    "BACKEND_NAME",
    "BoundsReport",
    "DepthSummary",
    "NonFiniteGradientError",
    "RunRecord",
    "SampleFileError",
    "StateVector",
    "SweepSummary",
    "TargetSpec",
    "TrainConfig",
    "adam_step",
    "apply_entangler",
    "apply_rotation",
    "bell_ghz_target",
    "born_distribution",
    "bounds_report",
    "build_layout",
    "d_c",
    "depth_to_bound",
    "detect_pc",
    "dla_dim",
    "gradient_adjoint",
    "gradient_param_shift",
    "gradient_sampled",
    "gradient_variance_study",
    "hep_target_from_samples",
    "hessian",
    "hessian_spectrum_summary",
    "init_params",
    "init_zero",
    "inner_product",
    "jsd",
    "jsd_grad_q",
    "jsd_hess_q",
    "kld",
    "make_target",
    "param_count",
    "prepare_state",
    "probabilities",
    "qfi_matrix",
    "qfi_rank",
    "quartiles",
    "sample_histogram",
    "sparse_target",
    "sparsity",
    "summarize_depth",
    "train_run",
    "tts",
    "uniform_target",
    "w_target",
]
