"""Sparse nonnegative recovery via fraction-function thresholding.

Library pieces: dense linalg helpers (:mod:`.linalg`), the penalty and its
closed-form thresholding operator (:mod:`.penalty`), the NIT solver
(:mod:`.solver`), a two-phase simplex baseline with a vertex enumerator
(:mod:`.lp`), and a Monte-Carlo benchmark harness (:mod:`.harness`). The
``fracsense`` command line fronts the solver, the LP baseline, the sweep
harness, and a thresholding self-check.
"""

from .linalg import (
    gaussian_matrix,
    load_matrix,
    load_vector,
    matvec,
    matvec_transpose,
    save_matrix,
    save_vector,
    spectral_norm_sq,
)
from .penalty import (
    PenaltyParams,
    ThresholdValues,
    fraction,
    nonneg_prox,
    penalty,
    project_nonneg,
    prox_scalar,
    prox_scalar_bruteforce,
    prox_vector,
    thresholds,
)
from .solver import (
    DivergenceError,
    IterationRecord,
    SolveReport,
    SolverConfig,
    Termination,
    default_step_size,
    gradient_step,
    nit_step,
    objective,
    schedule_lambda,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "gaussian_matrix",
    "load_matrix",
    "load_vector",
    "matvec",
    "matvec_transpose",
    "save_matrix",
    "save_vector",
    "spectral_norm_sq",
    "PenaltyParams",
    "ThresholdValues",
    "fraction",
    "nonneg_prox",
    "penalty",
    "project_nonneg",
    "prox_scalar",
    "prox_scalar_bruteforce",
    "prox_vector",
    "thresholds",
    "DivergenceError",
    "IterationRecord",
    "SolveReport",
    "SolverConfig",
    "Termination",
    "default_step_size",
    "gradient_step",
    "nit_step",
    "objective",
    "schedule_lambda",
    "solve",
    "__version__",
]
