"""Loading, generating and splitting binary transaction datasets.

A dataset is an N x K uint8 matrix: one row per transaction, one column per
attribute.  All randomness flows through numpy's seedable PCG64 generator
(``np.random.default_rng``), so every artifact is bit-reproducible from its
seed.
"""

from __future__ import annotations

import numpy as np

from .validation import check_binary_matrix

__all__ = ["load_dense", "load_sparse", "save_dense", "split", "synthetic", "SYNTHETIC_KINDS"]

SYNTHETIC_KINDS = ("ind", "clust", "path", "npath")


class ParseError(ValueError):
    """Raised on malformed dataset or order files; carries the line number."""


def load_dense(path) -> np.ndarray:
    """Read a dense 0/1 matrix, one transaction per line.

    Tokens may be separated by commas and/or whitespace.  Every line must
    hold the same number of tokens.  Returns an N x K uint8 array.
    """
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            tokens = line.replace(",", " ").split()
            row = []
            for tok in tokens:
                if tok == "0":
                    row.append(0)
                elif tok == "1":
                    row.append(1)
                else:
                    raise ParseError(f"{path}: line {lineno}: invalid token {tok!r} (expected 0 or 1)")
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ParseError(
                    f"{path}: line {lineno}: ragged row of length {len(row)}, expected {width}"
                )
            rows.append(row)
    if not rows:
        raise ParseError(f"{path}: empty dataset file")
    return np.array(rows, dtype=np.uint8)


def load_sparse(path, n_cols: int) -> np.ndarray:
    """Read a sparse transaction file: each line lists the 1-based indices of 1s.

    Empty lines denote all-zero transactions.  Duplicate or out-of-range
    indices are errors.  Returns a dense N x n_cols uint8 array.
    """
    if n_cols < 1:
        raise ValueError("n_cols must be >= 1")
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            row = np.zeros(n_cols, dtype=np.uint8)
            seen = set()
            for tok in line.split():
                try:
                    idx = int(tok)
                except ValueError:
                    raise ParseError(f"{path}: line {lineno}: invalid index {tok!r}") from None
                if not 1 <= idx <= n_cols:
                    raise ParseError(
                        f"{path}: line {lineno}: index {idx} out of range 1..{n_cols}"
                    )
                if idx in seen:
                    raise ParseError(f"{path}: line {lineno}: duplicate index {idx}")
                seen.add(idx)
                row[idx - 1] = 1
            rows.append(row)
    if not rows:
        raise ParseError(f"{path}: empty dataset file")
    return np.array(rows, dtype=np.uint8)


def save_dense(path, X) -> None:
    """Write a binary matrix in the dense space-separated format."""
    X = check_binary_matrix(X)
    with open(path, "w", encoding="utf-8") as fh:
        for row in X:
            fh.write(" ".join("1" if v else "0" for v in row))
            fh.write("\n")


def split(X, fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Partition rows uniformly at random into two parts.

    The first part gets ``round(fraction * N)`` rows (clamped so both parts
    are non-empty).  Deterministic given the seed; the union of the parts is
    the original row multiset.
    """
    X = check_binary_matrix(X)
    n = X.shape[0]
    if n < 2:
        raise ValueError("need at least 2 rows to split")
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must lie in (0, 1)")
    n1 = int(round(fraction * n))
    n1 = min(max(n1, 1), n - 1)
    perm = np.random.default_rng(seed).permutation(n)
    return X[perm[:n1]].copy(), X[perm[n1:]].copy()


def synthetic(kind: str, n_cols: int, n_rows: int, param: float | None = None, *, seed: int) -> np.ndarray:
    """Generate a synthetic binary dataset.

    Kinds:
      ind    independent Bernoulli(param) attributes (param defaults to 0.5);
      clust  two equal row clusters of independent attributes, with
             1-probability 3/4 in the first cluster and 1/4 in the second
             (param ignored; odd N puts the extra row in the first cluster);
      path   a Markov chain over columns: the first column is a fair coin,
             each next column copies its left neighbor and flips with
             probability param (default 0.25);
      npath  same chain with param defaulting to 0.75, so that consecutive
             columns are negatively correlated.
    """
    if kind not in SYNTHETIC_KINDS:
        raise ValueError(f"unknown kind {kind!r}, expected one of {SYNTHETIC_KINDS}")
    if n_cols < 1 or n_rows < 1:
        raise ValueError("n_cols and n_rows must be >= 1")
    if param is None:
        param = {"ind": 0.5, "clust": 0.5, "path": 0.25, "npath": 0.75}[kind]
    if not 0.0 <= param <= 1.0:
        raise ValueError("param must lie in [0, 1]")
    rng = np.random.default_rng(seed)

    if kind == "ind":
        return (rng.random((n_rows, n_cols)) < param).astype(np.uint8)

    if kind == "clust":
        n1 = (n_rows + 1) // 2
        X = np.empty((n_rows, n_cols), dtype=np.uint8)
        X[:n1] = rng.random((n1, n_cols)) < 0.75
        X[n1:] = rng.random((n_rows - n1, n_cols)) < 0.25
        return X

    # path / npath: column-wise Markov chain with flip probability `param`
    X = np.empty((n_rows, n_cols), dtype=np.uint8)
    X[:, 0] = rng.random(n_rows) < 0.5
    for j in range(1, n_cols):
        flips = rng.random(n_rows) < param
        X[:, j] = X[:, j - 1] ^ flips
    return X
