"""Linear-programming baseline: min 1'x subject to Ax = b, x >= 0.

``solve_lp`` is a dense two-phase primal simplex with Bland's anti-cycling
rule (enter on the smallest eligible column index, leave on the minimum
ratio with smallest basic index on ties). Phase 1 minimizes the sum of
artificial variables to decide feasibility; phase 2 minimizes the
coordinate sum. Problem sizes here are small enough that a dense tableau
is the simplest correct choice.

``enumerate_vertices`` lists every basic feasible solution of the same
polytope by solving each m-column basis, which doubles as an exhaustive
oracle for the simplex on tiny instances and supplies the polytope
constants used by the recovery-equivalence bounds: the smallest strictly
positive vertex coordinate, and the ratio of the minimum vertex nonzero
count to that coordinate.

Both routines assume A has full row rank (the caller's responsibility;
rank repair is out of scope).
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import as_matrix, as_vector
from .penalty import penalty

__all__ = [
    "LpStatus",
    "LpSolution",
    "VertexSet",
    "solve_lp",
    "enumerate_vertices",
    "least_fraction_vertex",
]

_PIVOT_EPS = 1e-10  # minimum usable pivot magnitude
_COST_EPS = 1e-9  # reduced-cost threshold for optimality
ZERO_TOL = 1e-9  # coordinate threshold for counting nonzeros on computed vertices


class LpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LpSolution:
    x: np.ndarray
    objective: float
    status: LpStatus
    basis: list[int] = field(default_factory=list)
    pivots: int = 0


class _PivotBudget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self):
        self.used += 1
        if self.used > self.limit:
            raise RuntimeError(f"simplex exceeded the pivot cap of {self.limit}")


def _pivot(tab: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    factors = tab[:, col].copy()
    factors[row] = 0.0
    tab -= np.outer(factors, tab[row])
    basis[row] = col


def _bland(tab: np.ndarray, basis: list[int], n_enter: int, budget: _PivotBudget) -> LpStatus:
    """Run simplex iterations on a tableau whose last row holds reduced costs.

    Only the first ``n_enter`` columns are eligible to enter (phase 1 bars
    the artificial columns from re-entering).
    """
    m = tab.shape[0] - 1
    while True:
        costs = tab[-1, :n_enter]
        eligible = np.nonzero(costs < -_COST_EPS)[0]
        if eligible.size == 0:
            return LpStatus.OPTIMAL
        col = int(eligible[0])
        colvals = tab[:m, col]
        rows = np.nonzero(colvals > _PIVOT_EPS)[0]
        if rows.size == 0:
            return LpStatus.UNBOUNDED
        ratios = tab[rows, -1] / colvals[rows]
        best = ratios.min()
        tied = rows[np.nonzero(ratios <= best + 1e-12)[0]]
        row = int(min(tied, key=lambda i: basis[i]))
        budget.spend()
        _pivot(tab, basis, row, col)


def solve_lp(a_mat, b, feas_tol: float = 1e-9) -> LpSolution:
    """Minimize the coordinate sum over ``{x : Ax = b, x >= 0}``.

    Returns the optimal point, its objective, the final basis, and the
    pivot count. Exceeding the pivot cap of ``m * n * 1000`` raises
    RuntimeError (it would indicate a cycling bug, which Bland's rule is
    meant to exclude).
    """
    a_mat = as_matrix(a_mat)
    b = as_vector(b)
    m, n = a_mat.shape
    if b.shape[0] != m:
        raise ValueError(f"rhs length {b.shape[0]} does not match matrix rows {m}")
    if not feas_tol > 0.0:
        raise ValueError("feas_tol must be positive")
    budget = _PivotBudget(m * n * 1000)

    flip = np.where(b < 0.0, -1.0, 1.0)
    a1 = a_mat * flip[:, None]
    b1 = b * flip

    # phase 1: artificial identity basis, cost = sum of artificials
    tab = np.zeros((m + 1, n + m + 1))
    tab[:m, :n] = a1
    tab[:m, n : n + m] = np.eye(m)
    tab[:m, -1] = b1
    tab[-1, :n] = -a1.sum(axis=0)
    tab[-1, -1] = -b1.sum()
    basis = list(range(n, n + m))

    status = _bland(tab, basis, n, budget)
    if status is not LpStatus.OPTIMAL:
        raise RuntimeError("phase 1 reported unbounded, which cannot happen")
    if -tab[-1, -1] > feas_tol:
        return LpSolution(
            x=np.zeros(n), objective=math.inf, status=LpStatus.INFEASIBLE, pivots=budget.used
        )

    # drive any zero-level artificial out of the basis
    for i in range(m):
        if basis[i] >= n:
            candidates = np.nonzero(np.abs(tab[i, :n]) > _PIVOT_EPS)[0]
            if candidates.size == 0:
                raise RuntimeError(
                    "row reduces to zero over the structural columns; matrix is not full row rank"
                )
            budget.spend()
            _pivot(tab, basis, i, int(candidates[0]))

    # phase 2: drop artificial columns, minimize the coordinate sum
    tab2 = np.zeros((m + 1, n + 1))
    tab2[:m, :n] = tab[:m, :n]
    tab2[:m, -1] = tab[:m, -1]
    tab2[-1, :n] = 1.0
    for i, j in enumerate(basis):
        tab2[-1] -= tab2[-1, j] * tab2[i]

    status = _bland(tab2, basis, n, budget)
    if status is LpStatus.UNBOUNDED:
        return LpSolution(
            x=np.zeros(n), objective=-math.inf, status=LpStatus.UNBOUNDED, pivots=budget.used
        )

    x = np.zeros(n)
    for i, j in enumerate(basis):
        x[j] = tab2[i, -1]
    x[(x < 0.0) & (x >= -feas_tol)] = 0.0
    return LpSolution(
        x=x,
        objective=float(np.sum(x)),
        status=LpStatus.OPTIMAL,
        basis=list(basis),
        pivots=budget.used,
    )


def _solve_square(sub: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Gaussian elimination with partial pivoting; None when a pivot is tiny."""
    m = sub.shape[0]
    aug = np.column_stack([sub, b]).astype(float)
    for col in range(m):
        piv = col + int(np.argmax(np.abs(aug[col:, col])))
        if abs(aug[piv, col]) < _PIVOT_EPS:
            return None
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col + 1 :] -= np.outer(aug[col + 1 :, col] / aug[col, col], aug[col])
    z = np.zeros(m)
    for row in range(m - 1, -1, -1):
        z[row] = (aug[row, -1] - aug[row, row + 1 : m] @ z[row + 1 :]) / aug[row, row]
    return z


class VertexSet:
    """Basic feasible solutions of ``{x : Ax = b, x >= 0}`` plus the
    polytope constants derived from them.

    ``r_const`` is the smallest coordinate above ``zero_tol`` over all
    vertices; ``a_star`` is the minimum vertex nonzero count divided by
    ``r_const``. Both raise ValueError when undefined (no vertices, or no
    positive coordinate anywhere).
    """

    def __init__(self, vertices: list[np.ndarray], zero_tol: float = ZERO_TOL):
        self.vertices = vertices
        self.zero_tol = zero_tol

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def r_const(self) -> float:
        positives = [v[v > self.zero_tol] for v in self.vertices]
        pooled = np.concatenate(positives) if positives else np.array([])
        if pooled.size == 0:
            raise ValueError("no strictly positive vertex coordinate; constant undefined")
        return float(pooled.min())

    @property
    def min_l0(self) -> int:
        if not self.vertices:
            raise ValueError("empty vertex set")
        return min(int(np.count_nonzero(v > self.zero_tol)) for v in self.vertices)

    @property
    def a_star(self) -> float:
        return self.min_l0 / self.r_const


def enumerate_vertices(a_mat, b, feas_tol: float = 1e-9) -> VertexSet:
    """Enumerate all basic feasible solutions of ``{x : Ax = b, x >= 0}``.

    Every m-subset of columns with a nonsingular submatrix contributes its
    basic solution; only nonnegative ones (within ``feas_tol``) are kept,
    tiny negative coordinates are clamped to zero, and duplicates from
    distinct bases are merged by coordinatewise comparison. Subsets are
    visited in lexicographic order, so the result is deterministic.

    Guarded to ``n <= 25`` and at most 200000 column subsets.
    """
    a_mat = as_matrix(a_mat)
    b = as_vector(b)
    m, n = a_mat.shape
    if b.shape[0] != m:
        raise ValueError(f"rhs length {b.shape[0]} does not match matrix rows {m}")
    if n > 25:
        raise ValueError(f"vertex enumeration is limited to n <= 25, got n={n}")
    if math.comb(n, m) > 200000:
        raise ValueError(f"too many column subsets: C({n},{m}) = {math.comb(n, m)} > 200000")

    vertices: list[np.ndarray] = []
    for cols in itertools.combinations(range(n), m):
        z = _solve_square(a_mat[:, cols], b)
        if z is None or z.min() < -feas_tol:
            continue
        v = np.zeros(n)
        v[list(cols)] = np.maximum(z, 0.0)
        if np.max(np.abs(a_mat @ v - b)) > feas_tol:
            continue
        if any(np.max(np.abs(v - u)) <= ZERO_TOL for u in vertices):
            continue
        vertices.append(v)
    return VertexSet(vertices)


def least_fraction_vertex(vs: VertexSet, a: float) -> np.ndarray:
    """Vertex with the smallest fraction-penalty value.

    Ties break toward the lexicographically smallest support index set.
    """
    if not vs.vertices:
        raise ValueError("empty vertex set")
    if not a > 0.0:
        raise ValueError("shape parameter a must be positive")

    def key(v: np.ndarray):
        support = tuple(np.nonzero(v > vs.zero_tol)[0])
        return (penalty(a, v), support)

    return min(vs.vertices, key=key)
