"""Fraction-function penalty and its closed-form thresholding operator.

The scalar penalty ``a|t| / (a|t| + 1)`` rises from 0 toward 1 as ``|t|``
grows, so summing it over a vector gives a smoothed nonzero count; the
shape parameter ``a`` controls how fast each term saturates. Minimizing
``(x - v)^2 + lam * a|x|/(a|x|+1)`` has a closed-form solution: below a
threshold ``t_star`` the minimizer is exactly zero, above it the minimizer
is a trigonometric expression in ``v`` (the real root of the stationarity
cubic picked via an arccos). The threshold switches formula at
``lam = 1/a**2``: below that the operator is continuous in ``v``, above it
the minimizer jumps from zero to a strictly positive value.

Boundary convention: ``|v|`` exactly equal to ``t_star`` maps to zero
(ties resolve toward sparsity). ``prox_scalar_bruteforce`` is an
independent grid-search oracle for the same minimization and adopts the
same tie convention at its (measure-zero) objective ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PenaltyParams",
    "ThresholdValues",
    "fraction",
    "penalty",
    "thresholds",
    "prox_scalar",
    "prox_vector",
    "project_nonneg",
    "nonneg_prox",
    "prox_scalar_bruteforce",
]

# how far the arccos argument may overshoot [-1, 1] before it is treated
# as an internal bug rather than rounding noise
_ARCCOS_SLACK = 1e-9


@dataclass(frozen=True)
class PenaltyParams:
    """Shape ``a`` and weight ``lam`` of the penalty term."""

    a: float
    lam: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise ValueError(f"shape parameter a must be finite and positive, got {self.a}")
        if not (math.isfinite(self.lam) and self.lam > 0.0):
            raise ValueError(f"weight lam must be finite and positive, got {self.lam}")


@dataclass(frozen=True)
class ThresholdValues:
    """The three candidate thresholds and the active one.

    ``t1 <= t3 <= t2`` always holds; all three equal ``1/(2a)`` when
    ``lam == 1/a**2``. The active threshold is ``t2`` for
    ``lam <= 1/a**2`` and ``t3`` otherwise.
    """

    t1: float
    t2: float
    t3: float
    t_star: float


def fraction(a: float, t):
    """Scalar penalty ``a|t| / (a|t| + 1)``; works elementwise on arrays."""
    if not a > 0.0:
        raise ValueError("shape parameter a must be positive")
    at = a * np.abs(t)
    return at / (at + 1.0)


def penalty(a: float, x) -> float:
    """Sum of :func:`fraction` over the entries of ``x``.

    Always in ``[0, nnz(x)]`` and strictly below the nonzero count when
    ``x != 0``.
    """
    return float(np.sum(fraction(a, np.asarray(x, dtype=float))))


def thresholds(p: PenaltyParams) -> ThresholdValues:
    """Threshold values of the scalar minimization for parameters ``p``."""
    a, lam = p.a, p.lam
    t1 = (np.cbrt(27.0 * lam * a * a / 8.0) - 1.0) / a
    t2 = 0.5 * lam * a
    t3 = math.sqrt(lam) - 0.5 / a
    t_star = t2 if lam <= 1.0 / (a * a) else t3
    return ThresholdValues(t1=float(t1), t2=t2, t3=t3, t_star=t_star)


def _shrink(a: float, lam: float, w: np.ndarray) -> np.ndarray:
    """Smooth branch of the thresholding operator on magnitudes ``w >= 0``.

    Only valid where the stationarity cubic has its real-root form, i.e.
    for magnitudes at or above the active threshold; callers are expected
    to mask beforehand. The arccos argument is clamped into [-1, 1] when
    within ``_ARCCOS_SLACK`` of the boundary; larger violations indicate a
    caller bug and raise ArithmeticError.
    """
    u = 1.0 + a * w
    arg = 27.0 * lam * a * a / (4.0 * u**3) - 1.0
    if np.any(arg > 1.0 + _ARCCOS_SLACK) or np.any(arg < -1.0 - _ARCCOS_SLACK):
        raise ArithmeticError(
            "thresholding operator evaluated outside its domain "
            f"(arccos argument in [{np.min(arg):.6g}, {np.max(arg):.6g}])"
        )
    arg = np.clip(arg, -1.0, 1.0)
    phi = np.arccos(arg)
    return (u / 3.0 * (1.0 + 2.0 * np.cos(phi / 3.0 - np.pi / 3.0)) - 1.0) / a


def prox_vector(p: PenaltyParams, v) -> np.ndarray:
    """Componentwise minimizer of ``||x - v||^2 + lam * penalty(a, x)``.

    Entries with ``|v_i| <= t_star`` map to zero, the rest to the smooth
    branch with the sign of ``v_i``. Output magnitudes never exceed the
    input magnitudes.
    """
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError("input entries must be finite")
    t_star = thresholds(p).t_star
    out = np.zeros_like(v)
    mask = np.abs(v) > t_star
    if np.any(mask):
        vm = v[mask]
        out[mask] = np.sign(vm) * _shrink(p.a, p.lam, np.abs(vm))
    return out


def prox_scalar(p: PenaltyParams, v: float) -> float:
    """Scalar form of :func:`prox_vector`."""
    return float(prox_vector(p, np.asarray([v], dtype=float))[0])


def project_nonneg(v) -> np.ndarray:
    """Componentwise ``max(0, v)``; idempotent."""
    return np.maximum(np.asarray(v, dtype=float), 0.0)


def nonneg_prox(p: PenaltyParams, v) -> np.ndarray:
    """Minimizer of ``||x - v||^2 + lam * penalty(a, x)`` over ``x >= 0``.

    Equals :func:`prox_vector` applied to the nonnegative projection of
    ``v``; the output is entrywise nonnegative.
    """
    return prox_vector(p, project_nonneg(v))


def _objective_1d(a: float, lam: float, x, w: float):
    return (x - w) ** 2 + lam * (a * x) / (a * x + 1.0)


def prox_scalar_bruteforce(
    a: float,
    lam: float,
    v: float,
    step: float = 1e-6,
    tie_tol: float = 1e-10,
) -> float:
    """Independent 1-D minimizer of ``(x - v)^2 + lam * fraction(a, x)``.

    Dense grid search over ``[0, |v|]`` at resolution ``step`` followed by
    golden-section (trisection-style) refinement of the best interior
    bracket, then comparison against the zero candidate. Refinement drives
    the location error far below ``step``, so coarser grids stay accurate
    as long as ``step`` is small enough to separate the competing basins.
    When the two candidates tie within ``tie_tol`` the smaller-magnitude
    minimizer is returned, matching the closed form's boundary convention.
    """
    if not (a > 0.0 and lam > 0.0):
        raise ValueError("a and lam must be positive")
    if v == 0.0:
        return 0.0
    sign = 1.0 if v > 0.0 else -1.0
    w = abs(v)

    npts = max(int(math.ceil(w / step)) + 1, 3)
    grid = np.linspace(0.0, w, npts)
    vals = _objective_1d(a, lam, grid, w)

    # best strictly-interior grid point, then refine its bracket
    i = 1 + int(np.argmin(vals[1:]))
    lo = grid[i - 1]
    hi = grid[min(i + 1, npts - 1)]
    x_int = _golden_section(lambda x: float(_objective_1d(a, lam, x, w)), lo, hi)

    h0 = w * w
    h_int = float(_objective_1d(a, lam, x_int, w))
    if h_int < h0 - tie_tol * (1.0 + abs(h0)):
        return sign * x_int
    return 0.0


def _golden_section(f, lo: float, hi: float, width_tol: float = 1e-13, max_iter: int = 200) -> float:
    """Golden-section minimization of a locally unimodal function."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a_, b_ = lo, hi
    c = b_ - invphi * (b_ - a_)
    d = a_ + invphi * (b_ - a_)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b_ - a_ <= width_tol * max(1.0, abs(b_) + abs(a_)):
            break
        if fc < fd:
            b_, d, fd = d, c, fc
            c = b_ - invphi * (b_ - a_)
            fc = f(c)
        else:
            a_, c, fc = c, d, fd
            d = a_ + invphi * (b_ - a_)
            fd = f(d)
    return 0.5 * (a_ + b_)
