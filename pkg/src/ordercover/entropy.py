"""Segment entropies in bits, computed by partition refinement and cached.

The entropy of a segment of consecutive (under some column order) attributes
is the Shannon entropy of the empirical distribution of the projected rows,
with base-2 logs and the 0*log(0) = 0 convention.  Refining one transaction
partition column by column yields all prefix entropies of a segment in
O((e - s + 1) * N) time, which is what the cache builder exploits.
"""

from __future__ import annotations

import numpy as np

from .validation import check_binary_matrix, check_order

__all__ = ["prefix_entropies", "build_cache", "EntropyCache"]


def _refine_entropies(X: np.ndarray, cols) -> np.ndarray:
    """Entropies of all prefixes of ``cols``, one partition refinement per column.

    Transactions start in a single group; each column splits every group on
    its value.  Group labels are kept compact (in [0, G)) so the per-column
    cost stays linear in N.
    """
    n = X.shape[0]
    ids = np.zeros(n, dtype=np.int64)
    n_groups = 1
    out = np.empty(len(cols), dtype=np.float64)
    for step, c in enumerate(cols):
        ids = ids * 2 + X[:, c]
        counts = np.bincount(ids, minlength=2 * n_groups)
        occupied = np.flatnonzero(counts)
        remap = np.empty(2 * n_groups, dtype=np.int64)
        remap[occupied] = np.arange(occupied.size)
        ids = remap[ids]
        n_groups = occupied.size
        p = counts[occupied] / n
        out[step] = -np.sum(p * np.log2(p))
    return out


def prefix_entropies(X, order, start: int, end: int) -> np.ndarray:
    """H of the segments [start, start], [start, start+1], ..., [start, end].

    Positions are 0-based inclusive indices into ``order``; the entropy of
    position segment [start, j] is the joint entropy of the attribute columns
    order[start..j].
    """
    X = check_binary_matrix(X)
    order = check_order(order, X.shape[1])
    k = X.shape[1]
    if not (0 <= start <= end < k):
        raise ValueError(f"positions out of range: start={start}, end={end}, K={k}")
    return _refine_entropies(X, order[start : end + 1])


class EntropyCache:
    """Entropies of every segment of length <= max_len under one fixed order.

    Built with K partition-refinement sweeps, one per start position.  The
    cache is immutable once built and safe to share between readers.
    """

    def __init__(self, order: np.ndarray, max_len: int, values: np.ndarray, n_rows: int):
        self.order = order
        self.max_len = max_len
        self.n_cols = order.shape[0]
        self.n_rows = n_rows
        self._values = values

    def get(self, start: int, end: int) -> float:
        """Cached entropy of the position segment [start, end], 0-based inclusive."""
        length = end - start + 1
        if not (0 <= start <= end < self.n_cols):
            raise ValueError(f"segment ({start}, {end}) out of range for K={self.n_cols}")
        if length > self.max_len:
            raise KeyError(f"segment ({start}, {end}) longer than cached max_len={self.max_len}")
        return float(self._values[start, length - 1])

    def __contains__(self, seg) -> bool:
        start, end = seg
        return 0 <= start <= end < self.n_cols and end - start + 1 <= self.max_len


def build_cache(X, order, max_len: int) -> EntropyCache:
    """Precompute H(segment) for all segments up to ``max_len`` under ``order``."""
    X = check_binary_matrix(X)
    k = X.shape[1]
    order = check_order(order, k)
    if not 1 <= max_len <= k:
        raise ValueError(f"max_len must lie in 1..{k}, got {max_len}")
    values = np.full((k, max_len), np.nan)
    for s in range(k):
        e = min(k - 1, s + max_len - 1)
        values[s, : e - s + 1] = _refine_entropies(X, order[s : e + 1])
    return EntropyCache(order.copy(), max_len, values, X.shape[0])
