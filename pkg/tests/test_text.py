import pytest
from hypothesis import given
from hypothesis import strategies as st

from sciqa.text import Token, normalize_answer, terms, tokenize, truncate_or_pad


def test_tokenize_splits_on_punctuation_with_offsets():
    assert tokenize("COVID-19 spreads.") == [
        Token("covid", 0, 5),
        Token("19", 6, 8),
        Token("spreads", 9, 16),
    ]


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_single_word():
    assert tokenize("fever") == [Token("fever", 0, 5)]


def test_tokenize_drops_punctuation_only_fragments():
    assert terms("... -- !!") == []


@given(st.text(max_size=200))
def test_tokenize_offsets_are_faithful(text):
    tokens = tokenize(text)
    for tok in tokens:
        assert text[tok.char_start : tok.char_end].lower() == tok.term
    starts = [tok.char_start for tok in tokens]
    assert starts == sorted(starts)
    for prev, cur in zip(tokens, tokens[1:]):
        assert prev.char_end <= cur.char_start


def test_normalize_answer_identity():
    assert normalize_answer("fever") == "fever"


def test_normalize_answer_case_punct_articles():
    assert normalize_answer("The Fever.") == "fever"


def test_normalize_answer_articles_and_spaces():
    assert normalize_answer("an  apple a day") == "apple day"


@given(st.text(max_size=200))
def test_normalize_answer_idempotent(text):
    once = normalize_answer(text)
    assert normalize_answer(once) == once


@given(st.lists(st.sampled_from(["fever", "dry", "cough", "acute"]), min_size=1, max_size=6))
def test_normalize_equivalence_classes(words):
    base = " ".join(words)
    shouty = " ".join(w.upper() for w in words) + "!!"
    articled = "the " + " ".join(words)
    assert normalize_answer(base) == normalize_answer(shouty) == normalize_answer(articled)


def test_truncate_keeps_prefix():
    tokens = list(range(120))
    out = truncate_or_pad(tokens, 100, pad_marker=-1)
    assert out == tokens[:100]


def test_pad_appends_markers():
    assert truncate_or_pad(["a", "b", "c"], 5, pad_marker="<pad>") == ["a", "b", "c", "<pad>", "<pad>"]


def test_exact_length_unchanged():
    tokens = ["a", "b", "c", "d", "e"]
    assert truncate_or_pad(tokens, 5, pad_marker="x") == tokens


def test_truncate_or_pad_rejects_bad_target():
    with pytest.raises(ValueError):
        truncate_or_pad([], 0, pad_marker=None)
