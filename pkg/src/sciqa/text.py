"""Word-level tokenization with character offsets, plus answer normalization.

Tokens are maximal runs of word characters; everything else (whitespace,
punctuation, symbols) separates tokens. Offsets always refer to the original
string so that answer spans can be sliced back out verbatim.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import List, Sequence, TypeVar

_WORD_RE = re.compile(r"\w+", re.UNICODE)
_ARTICLE_RE = re.compile(r"\b(a|an|the)\b")
_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


@dataclass(frozen=True)
class Token:
    term: str
    char_start: int
    char_end: int


def tokenize(text: str) -> List[Token]:
    """Split on whitespace/punctuation; terms lowercased, offsets half-open."""
    return [
        Token(m.group().lower(), m.start(), m.end())
        for m in _WORD_RE.finditer(text)
    ]


def terms(text: str) -> List[str]:
    return [m.group().lower() for m in _WORD_RE.finditer(text)]


def normalize_answer(text: str) -> str:
    """SQuAD-style normalization: lowercase, drop punctuation and articles,
    collapse whitespace."""
    out = text.lower().translate(_PUNCT_TABLE)
    out = _ARTICLE_RE.sub(" ", out)
    return " ".join(out.split())


_T = TypeVar("_T")


def truncate_or_pad(tokens: Sequence[_T], target_len: int, pad_marker: _T) -> List[_T]:
    """Force a token sequence to exactly target_len: keep the prefix, pad at
    the end."""
    if target_len < 1:
        raise ValueError(f"target_len must be >= 1, got {target_len}")
    out = list(tokens[:target_len])
    out.extend([pad_marker] * (target_len - len(out)))
    return out
