"""ordercover: how good is a column order on a binary dataset?

Fits an overlapping-segment model whose BIC score is minimal for the given
order (dynamic programming over cached segment entropies), induces candidate
orders spectrally and by greedy descent, and tests an order's significance
against uniformly random orders on held-out data.
"""

__version__ = "0.1.0"

from .cover import (
    CoverScore,
    cover_df,
    cover_score,
    enumerate_covers,
    min_df_for_chain,
    optimal_cover,
    prune_length,
    resolve_max_len,
    score_order,
    segment_score,
)
from .data import load_dense, load_sparse, save_dense, split, synthetic
from .entropy import EntropyCache, build_cache, prefix_entropies
from .estimator import AttributeOrdering
from .ordering import fiedler_order, fiedler_vector, greedy_order, laplacian, similarity_matrix
from .significance import (
    SignificanceReport,
    evaluate_order_set,
    independence_score,
    p_emp,
    p_ratio,
    sample_random_orders,
)
from .validation import check_binary_matrix, check_order

__all__ = [
    "AttributeOrdering",
    "CoverScore",
    "EntropyCache",
    "SignificanceReport",
    "build_cache",
    "check_binary_matrix",
    "check_order",
    "cover_df",
    "cover_score",
    "enumerate_covers",
    "evaluate_order_set",
    "fiedler_order",
    "fiedler_vector",
    "greedy_order",
    "independence_score",
    "laplacian",
    "load_dense",
    "load_sparse",
    "min_df_for_chain",
    "optimal_cover",
    "p_emp",
    "p_ratio",
    "prefix_entropies",
    "prune_length",
    "resolve_max_len",
    "sample_random_orders",
    "save_dense",
    "score_order",
    "segment_score",
    "similarity_matrix",
    "split",
    "synthetic",
]
