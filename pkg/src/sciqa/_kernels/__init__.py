"""Scoring kernels with backend selection at import time.

Prefers the compiled Cython extension; falls back to the pure-Python
implementation when the extension is unavailable or SCIQA_PURE_PYTHON is set.
"""

import os

from . import _scoring_py

if os.environ.get("SCIQA_PURE_PYTHON"):
    _impl = _scoring_py
    BACKEND = "python"
else:
    try:
        from . import _scoring_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _scoring_py
        BACKEND = "python"

score_postings = _impl.score_postings
span_candidates = _impl.span_candidates

__all__ = ["BACKEND", "score_postings", "span_candidates"]
