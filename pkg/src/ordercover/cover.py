"""Segment covers of an ordered attribute set: scoring, counting and search.

A cover is an ordered antichain of (start, end) position segments, 0-based
inclusive, whose union is all positions; consecutive segments may overlap.
Its score is the negative max log-likelihood of the overlapping-segment
factorization plus the BIC penalty (log2(N)/2 per free parameter); lower is
better.  ``optimal_cover`` minimizes the score by dynamic programming over
segments bounded by a sample-size-dependent length, which provably does not
change the optimum once the per-parameter penalty outweighs any likelihood
gain a longer segment could bring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import EntropyCache, build_cache
from .validation import check_binary_matrix, check_order

__all__ = [
    "CoverScore",
    "segment_score",
    "cover_score",
    "cover_df",
    "prune_length",
    "resolve_max_len",
    "optimal_cover",
    "score_order",
    "enumerate_covers",
    "min_df_for_chain",
]

# Absolute tolerance for treating two cover scores as equal (score
# magnitudes are O(N*K), far above double-precision noise at this scale).
SCORE_TOL = 1e-6

_ENUM_GUARD = 12


@dataclass(frozen=True)
class CoverScore:
    """Score decomposition of one cover: total = -log_likelihood + penalty."""

    total: float
    log_likelihood: float
    df: int
    penalty: float


def _check_cover(cover, n_cols: int) -> list[tuple[int, int]]:
    segs = [(int(s), int(e)) for s, e in cover]
    if not segs:
        raise ValueError("cover must contain at least one segment")
    prev_s, prev_e = None, None
    for s, e in segs:
        if not 0 <= s <= e < n_cols:
            raise ValueError(f"segment ({s}, {e}) out of range for K={n_cols}")
        if prev_s is not None:
            if s <= prev_s or e <= prev_e:
                raise ValueError("cover is not an antichain sorted by start")
            if s > prev_e + 1:
                raise ValueError(f"cover leaves a gap before position {s}")
        prev_s, prev_e = s, e
    if segs[0][0] != 0 or segs[-1][1] != n_cols - 1:
        raise ValueError("cover does not span all positions")
    return segs


def _overlaps(segs) -> list[tuple[int, int]]:
    """Intersections of consecutive segments; empty intersections are dropped."""
    out = []
    for (s1, e1), (s2, e2) in zip(segs, segs[1:]):
        if s2 <= e1:
            out.append((s2, e1))
    return out


def segment_score(cache: EntropyCache, n_rows: int, seg: tuple[int, int]) -> float:
    """N * H(seg) plus the BIC penalty for the segment's 2^len - 1 parameters."""
    if n_rows < 1:
        raise ValueError("n_rows must be >= 1")
    s, e = seg
    h = cache.get(s, e)
    length = e - s + 1
    return n_rows * h + 0.5 * math.log2(n_rows) * (2**length - 1)


def cover_df(cover) -> int:
    """Free parameters of the cover's model: sum over segments of 2^len - 1
    minus the same sum over consecutive overlaps."""
    segs = _check_cover(cover, max(e for _, e in cover) + 1)
    df = sum(2 ** (e - s + 1) - 1 for s, e in segs)
    df -= sum(2 ** (e - s + 1) - 1 for s, e in _overlaps(segs))
    return df


def cover_score(cache: EntropyCache, n_rows: int, cover) -> CoverScore:
    """Score a cover from cached entropies.

    The log-likelihood is -N * (sum of segment entropies - sum of overlap
    entropies); the penalty is log2(N)/2 per free parameter.
    """
    if n_rows < 1:
        raise ValueError("n_rows must be >= 1")
    segs = _check_cover(cover, cache.n_cols)
    h_segs = sum(cache.get(s, e) for s, e in segs)
    h_ovls = sum(cache.get(s, e) for s, e in _overlaps(segs))
    ll = -n_rows * (h_segs - h_ovls)
    df = cover_df(segs)
    penalty = 0.5 * math.log2(n_rows) * df
    return CoverScore(total=-ll + penalty, log_likelihood=ll, df=df, penalty=penalty)


def prune_length(n_rows: int) -> int | None:
    """Longest segment length worth considering for a sample of ``n_rows``.

    Returns the largest length l with 2^(l-2) * log2(n_rows) < n_rows: beyond
    it the BIC penalty difference always dominates the at-most-one-bit-per-row
    likelihood gain of growing a segment.  For n_rows <= 2 the test is
    degenerate and None is returned, meaning no pruning.
    """
    if n_rows < 1:
        raise ValueError("n_rows must be >= 1")
    if n_rows <= 2:
        return None
    log_n = math.log2(n_rows)
    length = 1
    while length < 64 and 2.0 ** (length - 1) * log_n < n_rows:
        length += 1
    return length


def resolve_max_len(n_rows: int, n_cols: int, max_len: int | None = None) -> int:
    """Effective DP segment-length bound: explicit value, else the prune bound,
    clamped to [1, n_cols]."""
    if max_len is None:
        max_len = prune_length(n_rows)
        if max_len is None:
            max_len = n_cols
    return max(1, min(max_len, n_cols))


def optimal_cover(
    cache: EntropyCache, n_rows: int, max_len: int
) -> tuple[list[tuple[int, int]], CoverScore]:
    """Minimum-score cover among all covers with segments of length <= max_len.

    Dynamic program over suffixes: cell (i, j) is the best cover of positions
    i..K-1 whose first segment contains position j.  Runs in O(K * max_len^2)
    score lookups.  Ties within SCORE_TOL are broken toward lower df, then
    the lexicographically earliest sequence of segment starts.
    """
    k = cache.n_cols
    if not 1 <= max_len <= cache.max_len:
        raise ValueError(f"max_len must lie in 1..cache.max_len={cache.max_len}")
    length_bound = min(max_len, k)
    log_pen = 0.5 * math.log2(n_rows)
    pen = [log_pen * (2**l - 1) for l in range(length_bound + 1)]
    dfs = [2**l - 1 for l in range(length_bound + 1)]

    # seg_sco[i][d]: score of segment (i, i + d)
    seg_sco = [
        [n_rows * cache.get(i, i + d) + pen[d + 1] for d in range(min(length_bound, k - i))]
        for i in range(k)
    ]

    # cell[i][j - i] = (score, df, starts, decision); decision is
    # ("base",) | ("extend",) | ("first", k_next)
    cells: list[list[tuple]] = [[None] * min(length_bound, k - i) for i in range(k)]

    for i in range(k - 1, -1, -1):
        row = cells[i]
        for j in range(i + len(row) - 1, i - 1, -1):
            d = j - i
            if j == k - 1:
                row[d] = (seg_sco[i][d], dfs[d + 1], (i,), ("base",))
                continue
            best_score = math.inf
            best_df = None
            best_tail = None
            best_dec = None
            if d + 1 < len(row):
                sc, df, starts, _ = row[d + 1]
                best_score, best_df, best_tail, best_dec = sc, df, starts[1:], ("extend",)
            first_sco = seg_sco[i][d]
            first_df = dfs[d + 1]
            for nxt in range(i + 1, j + 2):
                sub_sc, sub_df, sub_starts, _ = cells[nxt][j + 1 - nxt]
                if nxt <= j:
                    ov = j - nxt + 1
                    sc = first_sco + sub_sc - seg_sco[nxt][ov - 1]
                    df = first_df + sub_df - dfs[ov]
                else:
                    sc = first_sco + sub_sc
                    df = first_df + sub_df
                if sc < best_score - SCORE_TOL:
                    best_score, best_df, best_tail, best_dec = sc, df, sub_starts, ("first", nxt)
                elif sc <= best_score + SCORE_TOL:
                    if df < best_df or (df == best_df and sub_starts < best_tail):
                        best_df, best_tail, best_dec = df, sub_starts, ("first", nxt)
                        best_score = min(best_score, sc)
            row[d] = (best_score, best_df, (i,) + best_tail, best_dec)

    segs = []
    i, j = 0, 0
    while True:
        dec = cells[i][j - i][3]
        if dec[0] == "base":
            segs.append((i, k - 1))
            break
        if dec[0] == "extend":
            j += 1
        else:
            segs.append((i, j))
            i, j = dec[1], j + 1
    return segs, cover_score(cache, n_rows, segs)


def score_order(X, order, max_len: int | None = None) -> tuple[list[tuple[int, int]], CoverScore]:
    """Convenience wrapper: build the entropy cache for ``order`` and run the DP."""
    X = check_binary_matrix(X)
    n, k = X.shape
    length = resolve_max_len(n, k, max_len)
    cache = build_cache(X, order, length)
    return optimal_cover(cache, n, length)


def enumerate_covers(n_positions: int, max_len: int | None = None):
    """Yield every valid cover of 0..n_positions-1 exactly once (test oracle).

    Guarded to n_positions <= 12; the count grows like the Catalan numbers.
    """
    if n_positions < 1:
        raise ValueError("n_positions must be >= 1")
    if n_positions > _ENUM_GUARD:
        raise ValueError(f"exhaustive enumeration is limited to {_ENUM_GUARD} positions")
    bound = n_positions if max_len is None else min(max_len, n_positions)
    if bound < 1:
        raise ValueError("max_len must be >= 1")

    def rec(prefix, s, e):
        if e == n_positions - 1:
            yield list(prefix)
            return
        for s2 in range(s + 1, e + 2):
            for e2 in range(e + 1, min(n_positions - 1, s2 + bound - 1) + 1):
                prefix.append((s2, e2))
                yield from rec(prefix, s2, e2)
                prefix.pop()

    for e in range(min(bound, n_positions)):
        yield from rec([(0, e)], 0, e)


def _check_path_edges(edges, n_cols: int) -> None:
    degree: dict[int, int] = {}
    seen = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n_cols and 0 <= v < n_cols):
            raise ValueError(f"edge ({u}, {v}) out of range for K={n_cols}")
        if u == v:
            raise ValueError(f"self-loop ({u}, {v}) is not a path edge")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate edge {key}")
        seen.add(key)
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    if not edges:
        return
    if max(degree.values()) > 2 or sum(1 for d in degree.values() if d == 1) != 2:
        raise ValueError("edges do not form a simple path")
    if len(seen) != len(degree) - 1:
        raise ValueError("edges do not form a single connected path")
    # connectivity: walk from one endpoint
    adj: dict[int, list[int]] = {}
    for u, v in seen:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = next(x for x, d in degree.items() if d == 1)
    visited = {start}
    stack = [start]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in visited:
                visited.add(nb)
                stack.append(nb)
    if len(visited) != len(degree):
        raise ValueError("edges do not form a single connected path")


def min_df_for_chain(order, chain_edges) -> int:
    """Fewest free parameters of any cover (under ``order``) that puts both
    endpoints of every chain edge into a common segment.

    Built constructively: each edge spans an interval of positions; keep the
    maximal spans, fill uncovered positions with singletons.  The construction
    is validated against exhaustive search in the test suite for K <= 10.
    """
    order = np.asarray(order, dtype=np.intp)
    k = order.shape[0]
    check_order(order, k)
    edges = [(int(u), int(v)) for u, v in chain_edges]
    _check_path_edges(edges, k)

    pos = np.empty(k, dtype=np.intp)
    pos[order] = np.arange(k)
    spans = sorted({(min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in edges},
                   key=lambda se: (se[0], -se[1]))
    maximal: list[tuple[int, int]] = []
    max_end = -1
    for s, e in spans:
        if e > max_end:
            maximal.append((s, e))
            max_end = e

    cover: list[tuple[int, int]] = []
    covered_up_to = -1
    for s, e in maximal:
        for p in range(covered_up_to + 1, s):
            cover.append((p, p))
        cover.append((s, e))
        covered_up_to = max(covered_up_to, e)
    for p in range(covered_up_to + 1, k):
        cover.append((p, p))
    return cover_df(cover)
