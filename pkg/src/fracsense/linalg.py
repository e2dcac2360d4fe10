"""Dense linear algebra primitives shared by the solvers and the harness.

Matrices and vectors are plain float64 numpy arrays; matrices are kept
row-major (C-contiguous). Random generation goes through numpy's PCG64
generator (``np.random.default_rng``) so that a given seed reproduces the
same stream on every platform; normal variates come from the generator's
ziggurat sampler.

Rank repair is out of scope: routines that assume a full-row-rank matrix
(the LP baseline, the step-size rule) document the assumption and leave
row reduction to the caller.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_matrix",
    "as_vector",
    "matvec",
    "matvec_transpose",
    "spectral_norm_sq",
    "gaussian_matrix",
    "save_matrix",
    "load_matrix",
    "save_vector",
    "load_vector",
]


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a validated 2-D float64 array.

    Raises ValueError on wrong dimensionality, empty axes, or non-finite
    entries.
    """
    m = np.ascontiguousarray(a, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"matrix must have positive dimensions, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(x) -> np.ndarray:
    """Coerce ``x`` to a validated 1-D float64 array with finite entries."""
    v = np.ascontiguousarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got ndim={v.ndim}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def matvec(a, x) -> np.ndarray:
    """Return the product ``a @ x`` with dimension checking."""
    a = as_matrix(a)
    x = as_vector(x)
    if a.shape[1] != x.shape[0]:
        raise ValueError(f"dimension mismatch: matrix is {a.shape}, vector has length {x.shape[0]}")
    return a @ x


def matvec_transpose(a, y) -> np.ndarray:
    """Return ``a.T @ y`` with dimension checking."""
    a = as_matrix(a)
    y = as_vector(y)
    if a.shape[0] != y.shape[0]:
        raise ValueError(f"dimension mismatch: matrix is {a.shape}, vector has length {y.shape[0]}")
    return a.T @ y


def spectral_norm_sq(a, tol: float = 1e-10, max_iter: int = 1000, seed: int = 0) -> float:
    """Estimate the squared spectral norm (largest eigenvalue of ``A.T A``).

    Power iteration on ``A.T A`` from a seeded random start vector; stops
    once the relative change between successive Rayleigh quotients drops
    below ``tol`` or after ``max_iter`` iterations. Deterministic for a
    fixed seed.

    Raises ValueError for a zero matrix (no dominant eigenpair) or invalid
    tolerances.
    """
    a = as_matrix(a)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    if not a.any():
        raise ValueError("zero matrix has no dominant eigenpair")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(a.shape[1])
    v /= np.linalg.norm(v)
    prev = None
    lam = 0.0
    for _ in range(max_iter):
        w = a.T @ (a @ v)
        lam = float(v @ w)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            # start vector fell in the null space; restart from a fresh direction
            v = rng.standard_normal(a.shape[1])
            v /= np.linalg.norm(v)
            prev = None
            continue
        v = w / nw
        if prev is not None and abs(lam - prev) <= tol * max(abs(lam), 1.0):
            break
        prev = lam
    return lam


def gaussian_matrix(m: int, n: int, seed: int) -> np.ndarray:
    """Return an ``m x n`` matrix of i.i.d. standard normal entries.

    Sampling is numpy's ziggurat ``standard_normal`` on a PCG64 stream
    seeded with ``seed``, so the result is bit-identical across runs and
    platforms for a fixed seed.
    """
    if m < 1 or n < 1:
        raise ValueError(f"matrix dimensions must be positive, got ({m}, {n})")
    rng = np.random.default_rng(int(seed))
    return rng.standard_normal((m, n))


# Text persistence: matrices are "m n" on the first line followed by m rows
# of n space-separated literals; vectors are "n" followed by one line.
# %.17g preserves float64 values exactly on round-trip.
_FMT = "%.17g"


def save_matrix(path, a) -> None:
    """Write a matrix in the plain-text format described above."""
    a = as_matrix(a)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{a.shape[0]} {a.shape[1]}\n")
        for row in a:
            fh.write(" ".join(_FMT % v for v in row) + "\n")


def load_matrix(path) -> np.ndarray:
    """Read a matrix written by :func:`save_matrix`.

    Malformed input raises ValueError with the offending line number.
    """
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ValueError(f"{path}: line 1: empty file, expected 'm n' header")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"{path}: line 1: expected 'm n' header, got {lines[0]!r}")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError:
        raise ValueError(f"{path}: line 1: non-integer dimensions in {lines[0]!r}") from None
    if m < 1 or n < 1:
        raise ValueError(f"{path}: line 1: dimensions must be positive, got {m} {n}")
    if len(lines) < m + 1:
        raise ValueError(f"{path}: line {len(lines) + 1}: expected {m} data rows, found {len(lines) - 1}")
    rows = []
    for i in range(m):
        parts = lines[1 + i].split()
        if len(parts) != n:
            raise ValueError(f"{path}: line {i + 2}: expected {n} values, got {len(parts)}")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise ValueError(f"{path}: line {i + 2}: non-numeric value") from None
    return as_matrix(rows)


def save_vector(path, x) -> None:
    """Write a vector in the plain-text format described above."""
    x = as_vector(x)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{x.shape[0]}\n")
        fh.write(" ".join(_FMT % v for v in x) + "\n")


def load_vector(path) -> np.ndarray:
    """Read a vector written by :func:`save_vector`.

    Malformed input raises ValueError with the offending line number.
    """
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ValueError(f"{path}: line 1: empty file, expected length header")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ValueError(f"{path}: line 1: expected integer length, got {lines[0]!r}") from None
    if n < 1:
        raise ValueError(f"{path}: line 1: length must be positive, got {n}")
    if len(lines) < 2:
        raise ValueError(f"{path}: line 2: missing data line")
    parts = lines[1].split()
    if len(parts) != n:
        raise ValueError(f"{path}: line 2: expected {n} values, got {len(parts)}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ValueError(f"{path}: line 2: non-numeric value") from None
    return as_vector(vals)
