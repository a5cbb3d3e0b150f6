"""Input validation helpers shared across the package."""

import numpy as np

__all__ = ["check_binary_matrix", "check_order"]


def check_binary_matrix(X) -> np.ndarray:
    """Validate a 2-D 0/1 matrix and return it as a C-contiguous uint8 array.

    Accepts anything ``np.asarray`` understands (lists, bool/int/float
    arrays).  Every entry must be exactly 0 or 1 and the matrix must have
    at least one row and one column.
    """
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"matrix must have at least one row and one column, got shape {arr.shape}")
    if arr.dtype == bool:
        return np.ascontiguousarray(arr, dtype=np.uint8)
    vals = np.unique(arr)
    if not np.isin(vals, (0, 1)).all():
        bad = vals[~np.isin(vals, (0, 1))][:5]
        raise ValueError(f"matrix entries must be 0 or 1, found {bad.tolist()}")
    return np.ascontiguousarray(arr, dtype=np.uint8)


def check_order(order, n_cols: int) -> np.ndarray:
    """Validate a 0-based permutation of ``range(n_cols)`` and return it as intp."""
    perm = np.asarray(order, dtype=np.intp)
    if perm.ndim != 1 or perm.shape[0] != n_cols:
        raise ValueError(f"order must be a permutation of length {n_cols}, got shape {perm.shape}")
    if not np.array_equal(np.sort(perm), np.arange(n_cols)):
        raise ValueError("order is not a permutation of 0..%d" % (n_cols - 1))
    return perm
