"""Pure-Python scoring kernels (fallback when the compiled extension is absent).

Both kernels keep their floating-point operations in the same order as the
Cython implementation so the two backends produce bit-identical scores.
"""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple

import numpy as np


def score_postings(
    posting_idx: Sequence[np.ndarray],
    posting_weights: Sequence[np.ndarray],
    query_weights: np.ndarray,
    n_passages: int,
) -> np.ndarray:
    """Accumulate cosine scores over the posting lists of the query terms.

    posting_idx[t] holds the passage indices containing term t (no duplicates
    within one term), posting_weights[t] the matching normalized weights.
    """
    scores = np.zeros(n_passages, dtype=np.float64)
    for idx, weights, qw in zip(posting_idx, posting_weights, query_weights):
        scores[idx] += qw * weights
    return scores


def span_candidates(
    token_qidx: Sequence[int],
    query_idfs: Sequence[float],
    span_cap: int,
    threshold: float,
) -> List[Tuple[int, int, float]]:
    """Enumerate token spans scoring above threshold.

    token_qidx[i] is the query-term index of token i (-1 when the token is
    not a query term). A span [i, j] (inclusive, at most span_cap tokens)
    scores sum of the idf of each distinct covered query term divided by
    sqrt of the span's token length. Returns (start, end, score) triples.

    The covered-idf sum is recomputed in ascending term order whenever a new
    term enters the span, so the score depends only on the covered set (ties
    between equal-set spans are exact).
    """
    n = len(token_qidx)
    nq = len(query_idfs)
    out: List[Tuple[int, int, float]] = []
    counts = [0] * nq
    for i in range(n):
        for t in range(nq):
            counts[t] = 0
        covered = 0.0
        limit = min(n, i + span_cap)
        for j in range(i, limit):
            t = token_qidx[j]
            if t >= 0:
                counts[t] += 1
                if counts[t] == 1:
                    covered = 0.0
                    for q in range(nq):
                        if counts[q] > 0:
                            covered += query_idfs[q]
            score = covered / math.sqrt(j - i + 1)
            if score > threshold:
                out.append((i, j, score))
    return out
