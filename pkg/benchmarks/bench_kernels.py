"""Compare the compiled scoring kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--passages N] [--tokens N]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from sciqa._kernels import _scoring_py

try:
    from sciqa._kernels import _scoring_cy
except ImportError:
    _scoring_cy = None

VOCAB_SIZE = 2000
QUERY_TERMS = 6
SPAN_CAP = 30


def build_corpus(rng: random.Random, n_passages: int, tokens_per_passage: int):
    # zipf-ish term draw so posting lists have realistic skew
    weights = [1.0 / (r + 1) for r in range(VOCAB_SIZE)]
    token_lists = [
        rng.choices(range(VOCAB_SIZE), weights=weights, k=tokens_per_passage)
        for _ in range(n_passages)
    ]
    postings_idx: dict[int, list[int]] = {}
    postings_w: dict[int, list[float]] = {}
    for pidx, tokens in enumerate(token_lists):
        for term in set(tokens):
            postings_idx.setdefault(term, []).append(pidx)
            postings_w.setdefault(term, []).append(rng.random())
    return token_lists, postings_idx, postings_w


def time_call(fn, *args, repeats: int = 5) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_postings(backend, rng, postings_idx, postings_w, n_passages: int) -> float:
    terms = rng.sample(sorted(postings_idx), QUERY_TERMS)
    idx = [np.asarray(postings_idx[t], dtype=np.int32) for t in terms]
    wgt = [np.asarray(postings_w[t], dtype=np.float64) for t in terms]
    query = np.asarray([rng.random() for _ in terms])
    return time_call(backend.score_postings, idx, wgt, query, n_passages)


def bench_spans(backend, rng, token_lists) -> float:
    idfs = [1.0 + rng.random() * 3 for _ in range(QUERY_TERMS)]
    query_terms = set(rng.sample(range(VOCAB_SIZE), QUERY_TERMS))
    term_index = {t: i for i, t in enumerate(sorted(query_terms))}

    def run():
        for tokens in token_lists:
            qidx = [term_index.get(t, -1) for t in tokens]
            backend.span_candidates(qidx, idfs, SPAN_CAP, 0.0)

    return time_call(run)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--passages", type=int, default=2000)
    parser.add_argument("--tokens", type=int, default=200)
    args = parser.parse_args()

    rng = random.Random(42)
    token_lists, postings_idx, postings_w = build_corpus(rng, args.passages, args.tokens)

    backends = [("python", _scoring_py)]
    if _scoring_cy is not None:
        backends.append(("cython", _scoring_cy))

    print(f"corpus: {args.passages} passages x {args.tokens} tokens, {QUERY_TERMS}-term queries")
    print(f"{'kernel':<16} {'backend':<8} {'best (ms)':>10}")
    results: dict[tuple[str, str], float] = {}
    for name, backend in backends:
        t = bench_postings(backend, random.Random(1), postings_idx, postings_w, args.passages)
        results[("score_postings", name)] = t
        print(f"{'score_postings':<16} {name:<8} {t * 1e3:>10.3f}")
    for name, backend in backends:
        t = bench_spans(backend, random.Random(2), token_lists)
        results[("span_candidates", name)] = t
        print(f"{'span_candidates':<16} {name:<8} {t * 1e3:>10.3f}")

    if _scoring_cy is not None:
        for kernel in ("score_postings", "span_candidates"):
            ratio = results[(kernel, "python")] / results[(kernel, "cython")]
            print(f"{kernel}: cython is {ratio:.1f}x faster")


if __name__ == "__main__":
    main()
