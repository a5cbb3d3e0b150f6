"""Comparing candidate orders against uniformly random orders.

Two measures: ``p_emp``, the tie-split probability that a candidate order
scores worse (higher) than a random order, and ``p_ratio``, the negative
base-2 log of a normal-approximation tail probability for the standardized
mean score difference.  Both are computed on held-out data: orders are
learned on one half of a split and measured on the other, which keeps an
order that merely chases sampling noise from looking significant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cover import SCORE_TOL, resolve_max_len, score_order
from .entropy import build_cache
from .cover import cover_score
from .validation import check_binary_matrix

__all__ = [
    "sample_random_orders",
    "p_emp",
    "p_ratio",
    "evaluate_order_set",
    "independence_score",
    "SignificanceReport",
]


def sample_random_orders(n_cols: int, n_samples: int, seed: int) -> list[np.ndarray]:
    """Uniformly random permutations, one independent seeded substream each.

    Order i is drawn from ``default_rng([seed, i])``, so the list is
    reproducible and independent of any evaluation parallelism.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    return [np.random.default_rng([seed, i]).permutation(n_cols) for i in range(n_samples)]


def p_emp(scores_candidate, scores_random) -> float:
    """All-pairs estimate of P(candidate score > random score), ties counted half.

    Scores within SCORE_TOL of each other are ties; the measure is 0 when
    every candidate beats every random order and 1/2 when they are
    indistinguishable.
    """
    a = np.asarray(scores_candidate, dtype=np.float64)
    b = np.asarray(scores_random, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise ValueError("score lists must be non-empty")
    diff = a[:, None] - b[None, :]
    greater = np.count_nonzero(diff > SCORE_TOL)
    ties = np.count_nonzero(np.abs(diff) <= SCORE_TOL)
    return (greater + 0.5 * ties) / (a.size * b.size)


def _phi(z: float) -> float:
    """Standard normal CDF via erfc; relative error within a few ulp."""
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def p_ratio(scores_candidate, scores_random) -> float:
    """-log2 of the normal CDF at the standardized mean score difference.

    Equals 1 when the means coincide and grows as the candidate scores drop
    below the random ones.  Returns ``inf`` when the CDF underflows to zero
    in double precision.
    """
    a = np.asarray(scores_candidate, dtype=np.float64)
    b = np.asarray(scores_random, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise ValueError("score lists must be non-empty")
    var = float(np.var(a) + np.var(b))
    if var <= 0.0:
        raise ValueError("zero combined variance: the comparison is degenerate")
    z = (float(np.mean(a)) - float(np.mean(b))) / math.sqrt(var)
    phi = _phi(z)
    if phi == 0.0:
        return math.inf
    return -math.log2(phi)


def independence_score(X) -> float:
    """Cover score of the all-singletons cover (the order-free baseline)."""
    X = check_binary_matrix(X)
    n, k = X.shape
    cache = build_cache(X, np.arange(k), 1)
    return cover_score(cache, n, [(i, i) for i in range(k)]).total


@dataclass
class SignificanceReport:
    """Scores and measures of a candidate order set against random orders."""

    scores_candidate: list[float]
    scores_random: list[float]
    mu1: float
    mu2: float
    sigma1: float
    sigma2: float
    p_emp: float
    p_ratio: float
    score_independence: float
    seed: int | None = None
    max_len: int | None = None
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-ready summary; infinite p_ratio serializes as the string "inf"."""
        return {
            "p_emp": self.p_emp,
            "p_ratio": "inf" if math.isinf(self.p_ratio) else self.p_ratio,
            "mu1": self.mu1,
            "mu2": self.mu2,
            "sigma1": self.sigma1,
            "sigma2": self.sigma2,
            "n_candidates": len(self.scores_candidate),
            "n_random": len(self.scores_random),
            "score_independence": self.score_independence,
            **self.extras,
        }


def evaluate_order_set(
    train,
    test,
    candidates,
    n_random: int = 1000,
    seed: int = 0,
    max_len: int | None = None,
) -> SignificanceReport:
    """Score candidate orders (learned from ``train``) and random orders on ``test``.

    Candidates must have been induced from the training half only; this
    function just enforces the shape contract and does the scoring, in fixed
    index order so results do not depend on any parallelism.
    """
    train = check_binary_matrix(train)
    test = check_binary_matrix(test)
    if train.shape[1] != test.shape[1]:
        raise ValueError(
            f"train and test column counts differ: {train.shape[1]} != {test.shape[1]}"
        )
    candidates = list(candidates)
    if not candidates:
        raise ValueError("need at least one candidate order")
    k = test.shape[1]
    length = resolve_max_len(test.shape[0], k, max_len)

    scores_candidate = [score_order(test, o, length)[1].total for o in candidates]
    randoms = sample_random_orders(k, n_random, seed)
    scores_random = [score_order(test, o, length)[1].total for o in randoms]

    return SignificanceReport(
        scores_candidate=scores_candidate,
        scores_random=scores_random,
        mu1=float(np.mean(scores_candidate)),
        mu2=float(np.mean(scores_random)),
        sigma1=float(np.std(scores_candidate)),
        sigma2=float(np.std(scores_random)),
        p_emp=p_emp(scores_candidate, scores_random),
        p_ratio=p_ratio(scores_candidate, scores_random),
        score_independence=independence_score(test),
        seed=seed,
        max_len=length,
    )
