"""Independent brute-force implementations used as test oracles.

These deliberately re-derive every formula from scratch (plain dicts, math,
repeated-max selection) and never call into the library's scoring paths.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from typing import Dict, List, Sequence, Tuple

_WORD = re.compile(r"\w+")


def words(text: str) -> List[str]:
    return [m.group().lower() for m in _WORD.finditer(text)]


def word_spans(text: str) -> List[Tuple[str, int, int]]:
    return [(m.group().lower(), m.start(), m.end()) for m in _WORD.finditer(text)]


def tfidf_vectors(passage_texts: Dict[str, str]) -> Tuple[Dict[str, Dict[str, float]], Dict[str, float]]:
    """Per-passage normalized tf*idf vectors plus the idf table."""
    n = len(passage_texts)
    df: Counter = Counter()
    for text in passage_texts.values():
        df.update(set(words(text)))
    idf = {t: math.log((1 + n) / (1 + df[t])) + 1.0 for t in df}

    vectors = {}
    for pid, text in passage_texts.items():
        counts = Counter(words(text))
        weights = {t: counts[t] * idf[t] for t in counts}
        norm = math.sqrt(sum(w * w for w in weights.values()))
        vectors[pid] = {t: w / norm for t, w in weights.items()} if norm else {}
    return vectors, idf


def cosine_scores(passage_texts: Dict[str, str], query: str) -> Dict[str, float]:
    """Cosine of the query against every passage (zero scores included)."""
    vectors, idf = tfidf_vectors(passage_texts)
    counts = Counter(w for w in words(query) if w in idf)
    weights = {t: counts[t] * idf[t] for t in counts}
    norm = math.sqrt(sum(w * w for w in weights.values()))
    qvec = {t: w / norm for t, w in weights.items()} if norm else {}
    return {
        pid: sum(qvec.get(t, 0.0) * w for t, w in vec.items())
        for pid, vec in vectors.items()
    }


def oracle_idf(passage_texts: Dict[str, str], term: str) -> float:
    """Smoothed idf with df = 0 for unknown terms."""
    n = len(passage_texts)
    df = sum(1 for text in passage_texts.values() if term in set(words(text)))
    return math.log((1 + n) / (1 + df)) + 1.0


def best_spans(
    idf_of: Dict[str, float],
    query: str,
    passages: Sequence[Tuple[str, str]],  # (passage_id, text)
    top_k: int,
    span_cap: int = 30,
    max_query_tokens: int = 100,
    threshold: float = 0.0,
) -> List[Tuple[str, int, int, float]]:
    """Literal repeated-max greedy span selection.

    Returns (passage_id, char_start, char_end, raw_score) in selection order.
    idf_of must cover every unique query term.
    """
    query_terms = sorted({w for w in words(query)[:max_query_tokens]})
    pool = []
    for order, (pid, text) in enumerate(passages):
        toks = word_spans(text)
        for i in range(len(toks)):
            present = set()
            for j in range(i, min(len(toks), i + span_cap)):
                if toks[j][0] in query_terms:
                    present.add(toks[j][0])
                score = sum(idf_of[t] for t in sorted(present)) / math.sqrt(j - i + 1)
                if score > threshold:
                    pool.append(
                        {
                            "order": order,
                            "pid": pid,
                            "i": i,
                            "j": j,
                            "char_start": toks[i][1],
                            "char_end": toks[j][2],
                            "score": score,
                        }
                    )

    selected = []
    while pool and len(selected) < top_k:
        best = pool[0]
        for cand in pool[1:]:
            if (
                -cand["score"],
                cand["char_start"],
                cand["j"] - cand["i"] + 1,
                cand["pid"],
            ) < (
                -best["score"],
                best["char_start"],
                best["j"] - best["i"] + 1,
                best["pid"],
            ):
                best = cand
        selected.append(best)
        pool = [
            c
            for c in pool
            if c is not best
            and not (c["order"] == best["order"] and c["i"] <= best["j"] and best["i"] <= c["j"])
        ]
    return [(s["pid"], s["char_start"], s["char_end"], s["score"]) for s in selected]
