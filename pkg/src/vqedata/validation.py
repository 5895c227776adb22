"""Input validation helpers shared by the estimators and analysis API."""

import numpy as np


def check_distance_matrix(x, unit_interval: bool = False,
                          tol: float = 1e-9) -> np.ndarray:
    """Validate and return a square symmetric distance matrix.

    Requires zero diagonal, symmetry, non-negative entries, and (when
    unit_interval) entries bounded by 1 + tol.
    """
    d = np.asarray(x, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {d.shape}")
    if d.shape[0] < 1:
        raise ValueError("empty distance matrix")
    if not np.all(np.isfinite(d)):
        raise ValueError("distance matrix has non-finite entries")
    if np.any(np.abs(np.diag(d)) > tol):
        raise ValueError("distance matrix diagonal must be zero")
    if not np.allclose(d, d.T, rtol=0, atol=tol):
        raise ValueError("distance matrix must be symmetric")
    if d.min() < -tol:
        raise ValueError("distances must be non-negative")
    if unit_interval and d.max() > 1 + tol:
        raise ValueError("distances must lie in [0, 1]")
    return d


def check_labels(a, b=None):
    """Coerce one or two label sequences to 1-D integer arrays."""
    first = np.asarray(a)
    if first.ndim != 1 or first.size == 0:
        raise ValueError("labels must be a non-empty 1-D sequence")
    if b is None:
        return first
    second = np.asarray(b)
    if second.ndim != 1 or second.shape != first.shape:
        raise ValueError(
            f"label lengths differ: {first.shape[0]} vs {second.size}")
    return first, second
