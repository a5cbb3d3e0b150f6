"""Inducing candidate column orders: spectral (Fiedler) and greedy local search.

Four column-similarity matrices are supported; sorting the entries of the
Fiedler vector of their graph Laplacian gives a candidate order.  On matrices
whose entries decay monotonically away from the diagonal this recovers the
underlying order exactly, which is why it makes a good starting point for the
adjacent-swap descent in ``greedy_order``.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .cover import SCORE_TOL, resolve_max_len, score_order
from .validation import check_binary_matrix, check_order

__all__ = [
    "similarity_matrix",
    "laplacian",
    "fiedler_vector",
    "fiedler_order",
    "greedy_order",
    "SIMILARITY_KINDS",
]

SIMILARITY_KINDS = ("mi", "m2", "co", "cs")

_TIE_TOL = 1e-9
_RESIDUAL_RTOL = 1e-8


def _entropy_bits(counts: np.ndarray, n: int) -> np.ndarray:
    p = counts / n
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return -terms


def _mutual_information_matrix(X: np.ndarray) -> np.ndarray:
    n = X.shape[0]
    Xf = X.astype(np.float64)
    n11 = Xf.T @ Xf
    ones = Xf.sum(axis=0)
    n10 = ones[:, None] - n11
    n01 = ones[None, :] - n11
    n00 = n - n11 - n10 - n01
    h_pair = sum(_entropy_bits(c, n) for c in (n11, n10, n01, n00))
    h_one = _entropy_bits(ones, n) + _entropy_bits(n - ones, n)
    return h_one[:, None] + h_one[None, :] - h_pair


def similarity_matrix(X, kind: str) -> np.ndarray:
    """K x K symmetric nonnegative column-similarity matrix.

    Kinds: ``mi`` pairwise mutual information in bits (diagonal: single-column
    entropies); ``m2`` the same with entries at or below log2(N)/(2N) zeroed,
    the point where a BIC comparison prefers the independence model; ``co``
    the co-occurrence counts X^T X; ``cs`` cosine similarity of columns.
    """
    X = check_binary_matrix(X)
    n = X.shape[0]
    if kind not in SIMILARITY_KINDS:
        raise ValueError(f"unknown similarity kind {kind!r}, expected one of {SIMILARITY_KINDS}")
    if kind in ("mi", "m2"):
        m = _mutual_information_matrix(X)
        if kind == "m2":
            m = np.where(m <= math.log2(n) / (2 * n), 0.0, m)
        return m
    co = X.astype(np.float64).T @ X.astype(np.float64)
    if kind == "co":
        return co
    diag = np.diag(co)
    zero = np.flatnonzero(diag == 0)
    if zero.size:
        raise ValueError(f"cosine similarity undefined: column {zero[0]} is all zeros")
    v = 1.0 / np.sqrt(diag)
    return co * np.outer(v, v)


def laplacian(m: np.ndarray) -> np.ndarray:
    """Graph Laplacian diag(row sums) - m; the diagonal of m cancels out."""
    return np.diag(m.sum(axis=1)) - m


def _connected_components(m: np.ndarray) -> list[np.ndarray]:
    k = m.shape[0]
    adj = m > 0
    np.fill_diagonal(adj, False)
    unseen = set(range(k))
    comps = []
    while unseen:
        start = min(unseen)
        comp = {start}
        stack = [start]
        while stack:
            nbrs = np.flatnonzero(adj[stack.pop()])
            new = [int(j) for j in nbrs if j not in comp]
            comp.update(new)
            stack.extend(new)
        unseen -= comp
        comps.append(np.fromiter(sorted(comp), dtype=np.intp))
    return comps


def fiedler_vector(m) -> np.ndarray:
    """Unit eigenvector of the Laplacian's second-smallest eigenvalue.

    Deflation plus block power iteration: the Laplacian's null space (the
    constant vector, or one indicator per connected component) is projected
    out, and a small block is iterated under c*I - L with a Rayleigh-Ritz
    extraction per sweep until the eigen-residual of the smallest remaining
    eigenpair drops below 1e-8 times the matrix norm.  On a disconnected
    similarity graph the vector of the smallest strictly positive eigenvalue
    is returned with a warning.  The sign is fixed so the first entry that is
    not numerically zero is positive.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("similarity matrix must be square")
    k = m.shape[0]
    if k < 2:
        raise ValueError("need at least 2 columns for a Fiedler vector")
    if np.max(np.abs(m - m.T)) > _TIE_TOL:
        raise ValueError("similarity matrix is not symmetric")

    lap = laplacian(m)
    comps = _connected_components(m)
    if len(comps) == k:
        raise ValueError("similarity graph has no edges; every ordering is equivalent")
    if len(comps) > 1:
        warnings.warn(
            f"similarity graph has {len(comps)} connected components; "
            "using the eigenvector of the smallest strictly positive eigenvalue",
            RuntimeWarning,
        )
    null_basis = np.zeros((k, len(comps)))
    for idx, comp in enumerate(comps):
        null_basis[comp, idx] = 1.0 / math.sqrt(comp.size)

    # Gershgorin bound on the spectrum; for a Laplacian this is 2 * max degree.
    shift = 2.0 * float(lap.diagonal().max()) * (1.0 + 1e-12)
    resid_tol = _RESIDUAL_RTOL * float(np.linalg.norm(lap, "fro")) / math.sqrt(k)

    def project(vecs):
        return vecs - null_basis @ (null_basis.T @ vecs)

    block = max(1, min(4, k - len(comps)))
    V = project(np.random.default_rng(0).standard_normal((k, block)))
    V, _ = np.linalg.qr(V)
    max_sweeps = max(10 * k * k // block, 50)
    v = None
    residual = math.inf
    for _ in range(max_sweeps):
        W = project(shift * V - lap @ V)
        V, _ = np.linalg.qr(W)
        # Rayleigh-Ritz on the block: the small projected problem orders the
        # Ritz pairs so the first one approximates the target eigenpair.
        small = V.T @ (lap @ V)
        evals, evecs = np.linalg.eigh((small + small.T) / 2.0)
        v = V @ evecs[:, 0]
        lv = lap @ v
        lam = float(evals[0])
        residual = float(np.linalg.norm(lv - lam * v))
        if residual <= resid_tol:
            break
    else:
        raise RuntimeError(
            f"Fiedler iteration did not converge within {max_sweeps} sweeps "
            f"(residual {residual:.3e}, target {resid_tol:.3e})"
        )

    v = v / np.linalg.norm(v)
    nonzero = np.flatnonzero(np.abs(v) > 1e-12)
    if nonzero.size and v[nonzero[0]] < 0:
        v = -v
    return v


def fiedler_order(m, seed: int) -> np.ndarray:
    """Order induced by the Fiedler vector: columns sorted by entry, descending.

    Entries equal within 1e-9 form tie groups whose internal arrangement is
    shuffled with the seeded generator, approximating a sample from the set of
    all orders the spectrum leaves unresolved.
    """
    v = fiedler_vector(m)
    idx = np.argsort(-v, kind="stable")
    rng = np.random.default_rng(seed)
    order = idx.copy()
    group_start = 0
    for pos in range(1, len(idx) + 1):
        if pos == len(idx) or v[idx[pos - 1]] - v[idx[pos]] > _TIE_TOL:
            if pos - group_start > 1:
                order[group_start:pos] = rng.permutation(order[group_start:pos])
            group_start = pos
    return order


def greedy_order(X, initial, max_len: int | None = None) -> np.ndarray:
    """Adjacent-swap steepest descent on the cover score.

    Every adjacent transposition of the current order is scored; the best one
    is accepted only if it improves the score by more than the score
    tolerance (the leftmost swap wins among equally good ones).  Terminates
    at a local optimum; the score never increases along the way.
    """
    X = check_binary_matrix(X)
    n, k = X.shape
    order = check_order(initial, k).copy()
    length = resolve_max_len(n, k, max_len)
    current = score_order(X, order, length)[1].total
    while True:
        best_score = current
        best_order = None
        for i in range(1, k):
            candidate = order.copy()
            candidate[i - 1], candidate[i] = candidate[i], candidate[i - 1]
            total = score_order(X, candidate, length)[1].total
            if total < best_score - SCORE_TOL:
                best_score = total
                best_order = candidate
        if best_order is None:
            return order
        order, current = best_order, best_score
