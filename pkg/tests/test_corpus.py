import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from storygem.corpus import (
    TokenFilterConfig,
    WordEntry,
    count_words,
    default_stopwords,
    load_wordlist,
    tokenize,
)

EN = TokenFilterConfig.default()
RAW = TokenFilterConfig(language="xx", strip_symbols_and_numbers=False, max_words=10_000)


def test_stopword_sentence():
    assert tokenize("It is a Beer.", EN) == ["beer"]


def test_empty_text():
    assert tokenize("", EN) == []


def test_case_and_punctuation():
    assert tokenize("beer BEER Beer!", EN) == ["beer", "beer", "beer"]


def test_internal_hyphen_kept_edge_hyphen_stripped():
    assert tokenize("x-ray --dash-- -", RAW) == ["x-ray", "dash"]


def test_numbers_and_symbols_dropped_when_stripping():
    cfg = TokenFilterConfig.default(max_words=100)
    assert tokenize("brew 123 +++ 42nd", cfg) == ["brew", "42nd"]
    assert tokenize("123 456", RAW) == ["123", "456"]


def test_keep_lexicon_filters(tmp_path):
    lex = tmp_path / "keep.txt"
    lex.write_text("# allowed\nbeer\nmalt\n")
    cfg = TokenFilterConfig.default(keep_lexicon=load_wordlist(lex))
    assert tokenize("beer malt barley water", cfg) == ["beer", "malt"]


def test_config_requires_stopwords_for_supported_language():
    with pytest.raises(ValueError):
        TokenFilterConfig(language="en", stopwords=frozenset())
    TokenFilterConfig(language="xx", stopwords=frozenset())  # ok: unsupported


def test_max_words_validated():
    with pytest.raises(ValueError):
        TokenFilterConfig.default(max_words=0)


def test_count_words_multiset():
    entries = count_words(["a", "b", "a"], RAW)
    assert [(e.surface, e.count) for e in entries] == [("a", 2), ("b", 1)]


def test_count_words_cap_and_tiebreak():
    tokens = ["x"] * 5 + ["y"] * 3 + ["z"] * 3
    cfg = TokenFilterConfig(language="xx", max_words=2)
    entries = count_words(tokens, cfg)
    assert [(e.surface, e.count) for e in entries] == [("x", 5), ("y", 3)]


def test_counts_sum_to_token_count():
    tokens = tokenize("hop malt hop yeast hop malt", RAW)
    entries = count_words(tokens, RAW)
    assert sum(e.count for e in entries) == len(tokens)


def test_word_entry_validation():
    with pytest.raises(ValueError):
        WordEntry(surface="", count=1)
    with pytest.raises(ValueError):
        WordEntry(surface="two words", count=1)
    with pytest.raises(ValueError):
        WordEntry(surface="ok", count=0)


def test_default_stopwords_content():
    words = default_stopwords("en")
    assert {"it", "is", "a", "the"} <= words
    with pytest.raises(ValueError):
        default_stopwords("zz")


@given(st.text(max_size=300))
@settings(max_examples=80, deadline=None)
def test_tokenize_idempotent_under_whitespace_join(text):
    once = tokenize(text, EN)
    assert tokenize(" ".join(once), EN) == once


@given(st.text(max_size=200))
@settings(max_examples=50, deadline=None)
def test_tokens_lowercase_no_whitespace(text):
    for tok in tokenize(text, EN):
        assert tok == tok.lower()
        assert not any(c.isspace() for c in tok)
