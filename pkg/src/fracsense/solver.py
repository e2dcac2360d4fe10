"""Nonnegative iterative thresholding (NIT) for sparse recovery.

Each iteration takes a gradient step on the data-fit term, projects onto
the nonnegative orthant, and applies the closed-form thresholding operator
with weight ``lam * mu``:

    x_next = threshold(project(x + mu * A.T @ (b - A @ x)))

With a fixed weight the objective ``||Ax - b||^2 + lam * penalty(a, x)``
is nonincreasing along the iterates whenever ``mu < 1 / ||A||_2^2``, and
converged iterates are fixed points of the update map.

The regularization weight can instead follow an oracle-sparsity schedule:
given a target nonzero count ``r``, the weight is chosen each iteration so
that the induced threshold lands between the r-th and (r+1)-th largest
entries of the projected gradient step, steering the iterate toward r
nonzeros. When the schedule picks the upper-branch weight the induced
threshold coincides with the r-th entry itself, so that entry is kept
(compared with ``>=``) rather than zeroed.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .linalg import as_matrix, as_vector, spectral_norm_sq
from .penalty import PenaltyParams, _shrink, penalty, prox_vector

__all__ = [
    "Termination",
    "DivergenceError",
    "SolverConfig",
    "IterationRecord",
    "SolveReport",
    "default_step_size",
    "gradient_step",
    "objective",
    "schedule_lambda",
    "nit_step",
    "solve",
]

# weight floor used when the (r+1)-th sorted entry is exactly zero, where
# the schedule formula would return zero and an invalid penalty weight
LAMBDA_FLOOR = 1e-12


class Termination(str, enum.Enum):
    CONVERGED = "converged"
    MAX_ITER = "max_iter"


class DivergenceError(RuntimeError):
    """Raised when an iterate stops being finite."""


@dataclass(frozen=True)
class SolverConfig:
    """Knobs of the iteration.

    a: penalty shape (> 0).
    target_sparsity: nonzero count r steering the weight schedule.
    epsilon: safety margin in the step size ``(1 - epsilon) / ||A||_2^2``.
    tol: relative-change stopping tolerance.
    max_iter: iteration cap.
    lambda_override: fixed weight; disables the schedule when set.
    """

    a: float
    target_sparsity: int
    epsilon: float = 0.01
    tol: float = 1e-8
    max_iter: int = 10000
    lambda_override: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise ValueError(f"a must be finite and positive, got {self.a}")
        if self.target_sparsity < 1:
            raise ValueError(f"target_sparsity must be at least 1, got {self.target_sparsity}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")
        if self.lambda_override is not None and not self.lambda_override > 0.0:
            raise ValueError(f"lambda_override must be positive, got {self.lambda_override}")


@dataclass(frozen=True)
class IterationRecord:
    """Snapshot of step ``k``: state before the step plus the step length.

    objective and residual are evaluated at the pre-step iterate with the
    weight used this step; step_delta is the distance to the next iterate.
    """

    k: int
    objective: float
    step_delta: float
    lambda_k: float
    residual: float


@dataclass
class SolveReport:
    solution: np.ndarray
    trace: list[IterationRecord] = field(repr=False)
    termination: Termination
    mu: float
    fixed_point_residual: float

    def to_dict(self) -> dict:
        return {
            "solution": [float(v) for v in self.solution],
            "trace": [asdict(rec) for rec in self.trace],
            "termination": self.termination.value,
            "mu": self.mu,
            "fixed_point_residual": self.fixed_point_residual,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def default_step_size(a_mat, epsilon: float) -> float:
    """Step size ``(1 - epsilon) / ||A||_2^2``, strictly below ``1/||A||_2^2``."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    return (1.0 - epsilon) / spectral_norm_sq(a_mat)


def gradient_step(a_mat, b, z, mu: float) -> np.ndarray:
    """Return ``z + mu * A.T @ (b - A @ z)``."""
    a_mat = as_matrix(a_mat)
    b = as_vector(b)
    z = as_vector(z)
    if a_mat.shape[0] != b.shape[0] or a_mat.shape[1] != z.shape[0]:
        raise ValueError(
            f"dimension mismatch: matrix {a_mat.shape}, rhs {b.shape[0]}, iterate {z.shape[0]}"
        )
    if not mu > 0.0:
        raise ValueError(f"mu must be positive, got {mu}")
    return z + mu * (a_mat.T @ (b - a_mat @ z))


def objective(a_mat, b, x, a: float, lam: float) -> float:
    """Penalized objective ``||Ax - b||^2 + lam * penalty(a, x)``."""
    a_mat = as_matrix(a_mat)
    b = as_vector(b)
    x = as_vector(x)
    if a_mat.shape[0] != b.shape[0] or a_mat.shape[1] != x.shape[0]:
        raise ValueError(
            f"dimension mismatch: matrix {a_mat.shape}, rhs {b.shape[0]}, point {x.shape[0]}"
        )
    r = a_mat @ x - b
    return float(r @ r + lam * penalty(a, x))


def _schedule(w_r: float, w_r1: float, a: float, mu: float) -> tuple[float, float, bool]:
    """Weight and threshold from the r-th / (r+1)-th largest entries.

    Returns (lam, threshold, upper_branch). Lower branch: lam makes the
    threshold equal the (r+1)-th entry, floored at LAMBDA_FLOOR when that
    entry is zero. Upper branch (taken when the lower-branch lam exceeds
    ``1/(a^2 mu)``): lam makes the threshold equal the r-th entry.
    """
    bound = 1.0 / (a * a * mu)
    lam1 = 2.0 * w_r1 / (a * mu)
    if lam1 <= bound:
        lam = max(lam1, LAMBDA_FLOOR)
        return lam, 0.5 * lam * mu * a, False
    lam2 = (2.0 * a * w_r + 1.0) ** 2 / (4.0 * a * a * mu)
    return lam2, max(math.sqrt(lam2 * mu) - 0.5 / a, 0.0), True


def schedule_lambda(sorted_desc, r: int, a: float, mu: float) -> tuple[float, float]:
    """Adaptive weight for one iteration, from the sorted projected step.

    ``sorted_desc`` must be nonincreasing with nonnegative entries and
    ``1 <= r < len(sorted_desc)``. Returns ``(lam, threshold)`` with the
    threshold between the r-th and (r+1)-th entries (up to the floor and
    the upper-branch clamp).
    """
    w = as_vector(sorted_desc)
    n = w.shape[0]
    if not 1 <= r < n:
        raise ValueError(f"need 1 <= r < n, got r={r}, n={n}")
    if np.any(np.diff(w) > 0.0) or w[-1] < 0.0:
        raise ValueError("input must be sorted nonincreasing with nonnegative entries")
    if not (a > 0.0 and mu > 0.0):
        raise ValueError("a and mu must be positive")
    lam, t, _ = _schedule(float(w[r - 1]), float(w[r]), a, mu)
    return lam, t


def _apply_step(
    a_mat: np.ndarray,
    b: np.ndarray,
    x: np.ndarray,
    mu: float,
    a: float,
    target_sparsity: int | None,
    lambda_override: float | None,
) -> tuple[np.ndarray, float]:
    """One NIT update without validation; returns (x_next, lam_used)."""
    z = x + mu * (a_mat.T @ (b - a_mat @ x))
    w = np.maximum(z, 0.0)
    if lambda_override is not None:
        lam = lambda_override
        return prox_vector(PenaltyParams(a, lam * mu), w), lam
    r = target_sparsity
    n = w.shape[0]
    part = np.partition(w, (n - r - 1, n - r))
    w_r, w_r1 = float(part[n - r]), float(part[n - r - 1])
    lam, t, upper = _schedule(w_r, w_r1, a, mu)
    # upper branch: threshold == r-th entry, which must survive; compare
    # against the entry itself so rounding in t cannot drop it
    keep = w >= min(t, w_r) if upper else w > t
    x_next = np.zeros_like(w)
    if np.any(keep):
        x_next[keep] = _shrink(a, lam * mu, w[keep])
    return x_next, lam


def nit_step(
    a_mat,
    b,
    x,
    mu: float,
    a: float,
    target_sparsity: int | None = None,
    lambda_override: float | None = None,
) -> tuple[np.ndarray, float]:
    """Apply a single NIT update to ``x``; returns (x_next, lam_used).

    Exactly the update used inside :func:`solve`; exposed so fixed points
    can be probed externally. One of ``target_sparsity`` (schedule) or
    ``lambda_override`` (fixed weight) must be given.
    """
    a_mat = as_matrix(a_mat)
    b = as_vector(b)
    x = as_vector(x)
    if a_mat.shape[0] != b.shape[0] or a_mat.shape[1] != x.shape[0]:
        raise ValueError("dimension mismatch")
    if lambda_override is None:
        if target_sparsity is None:
            raise ValueError("need target_sparsity or lambda_override")
        if not 1 <= target_sparsity < x.shape[0]:
            raise ValueError(f"need 1 <= target_sparsity < n, got {target_sparsity}")
    return _apply_step(a_mat, b, x, mu, a, target_sparsity, lambda_override)


def solve(a_mat, b, cfg: SolverConfig, x0=None) -> SolveReport:
    """Run the NIT iteration until the relative change drops below tol.

    Stops when ``||x_next - x|| / ||x|| <= tol`` (a zero iterate counts as
    converged only on a zero step) or at ``max_iter``. The returned
    solution is entrywise nonnegative; ``fixed_point_residual`` is the
    distance moved by one extra update applied to it.
    """
    a_mat = as_matrix(a_mat)
    b = as_vector(b)
    m, n = a_mat.shape
    if b.shape[0] != m:
        raise ValueError(f"rhs length {b.shape[0]} does not match matrix rows {m}")
    if cfg.lambda_override is None and not cfg.target_sparsity < n:
        raise ValueError(
            f"target_sparsity={cfg.target_sparsity} needs at least {cfg.target_sparsity + 1} columns"
        )
    x = np.zeros(n) if x0 is None else as_vector(x0).copy()
    if x.shape[0] != n:
        raise ValueError(f"x0 length {x.shape[0]} does not match matrix columns {n}")

    mu = default_step_size(a_mat, cfg.epsilon)
    trace: list[IterationRecord] = []
    termination = Termination.MAX_ITER
    for k in range(cfg.max_iter):
        x_next, lam = _apply_step(
            a_mat, b, x, mu, cfg.a, cfg.target_sparsity, cfg.lambda_override
        )
        if not np.all(np.isfinite(x_next)):
            raise DivergenceError(f"iterate became non-finite at step {k}")
        resid = a_mat @ x - b
        rn = float(np.linalg.norm(resid))
        obj = rn * rn + lam * penalty(cfg.a, x)
        delta = float(np.linalg.norm(x_next - x))
        trace.append(IterationRecord(k=k, objective=obj, step_delta=delta, lambda_k=lam, residual=rn))
        nx = float(np.linalg.norm(x))
        converged = delta <= cfg.tol * nx if nx > 0.0 else delta == 0.0
        x = x_next
        if converged:
            termination = Termination.CONVERGED
            break

    x_extra, _ = _apply_step(a_mat, b, x, mu, cfg.a, cfg.target_sparsity, cfg.lambda_override)
    fp_res = float(np.linalg.norm(x - x_extra))
    return SolveReport(
        solution=x,
        trace=trace,
        termination=termination,
        mu=mu,
        fixed_point_residual=fp_res,
    )
