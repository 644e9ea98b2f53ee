# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scoring kernels: posting-list accumulation and span enumeration.

Mirrors _scoring_py exactly, including floating-point operation order.
"""

from libc.math cimport sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()


def score_postings(posting_idx, posting_weights, query_weights, int n_passages):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] scores = np.zeros(n_passages, dtype=np.float64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] idx
    cdef cnp.ndarray[cnp.float64_t, ndim=1] weights
    cdef double qw
    cdef Py_ssize_t t, i, m
    for t in range(len(posting_idx)):
        idx = posting_idx[t]
        weights = posting_weights[t]
        qw = query_weights[t]
        m = idx.shape[0]
        for i in range(m):
            scores[idx[i]] += qw * weights[i]
    return scores


def span_candidates(token_qidx, query_idfs, int span_cap, double threshold):
    cdef cnp.ndarray[cnp.int32_t, ndim=1] qidx = np.asarray(token_qidx, dtype=np.int32)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] idfs = np.asarray(query_idfs, dtype=np.float64)
    cdef Py_ssize_t n = qidx.shape[0]
    cdef Py_ssize_t nq = idfs.shape[0]
    cdef Py_ssize_t cap = span_cap

    # at most n * span_cap spans can clear the threshold
    cdef Py_ssize_t max_spans = n * cap
    cdef cnp.ndarray[cnp.int32_t, ndim=1] starts = np.empty(max_spans, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] ends = np.empty(max_spans, dtype=np.int32)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] scores = np.empty(max_spans, dtype=np.float64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] counts = np.zeros(nq, dtype=np.int32)

    cdef Py_ssize_t i, j, limit, q, out = 0
    cdef int t
    cdef double covered, score
    for i in range(n):
        for t in range(nq):
            counts[t] = 0
        covered = 0.0
        limit = i + cap
        if limit > n:
            limit = n
        for j in range(i, limit):
            t = qidx[j]
            if t >= 0:
                counts[t] += 1
                if counts[t] == 1:
                    # canonical ascending-order sum: score depends only on
                    # the covered set
                    covered = 0.0
                    for q in range(nq):
                        if counts[q] > 0:
                            covered += idfs[q]
            score = covered / sqrt(<double> (j - i + 1))
            if score > threshold:
                starts[out] = <cnp.int32_t> i
                ends[out] = <cnp.int32_t> j
                scores[out] = score
                out += 1
    return [(int(starts[k]), int(ends[k]), float(scores[k])) for k in range(out)]
