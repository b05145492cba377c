"""Plain-text ingestion: tokenize, filter, count.

Tokens are runs of letters, digits and hyphens; anything else splits. Edge
hyphens are stripped so that internal hyphens ("x-ray") survive while dashes
used as punctuation do not. Filtering drops stop words, symbol/number tokens,
and (when a keep-lexicon is supplied) everything outside it. The keep-lexicon
stands in for part-of-speech filtering: a word-per-line file of allowed
content words keeps the pipeline deterministic without a tagger.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

_TOKEN_RE = re.compile(r"[\w\-]+", re.UNICODE)

SUPPORTED_LANGUAGES = ("en",)


def default_stopwords(language: str = "en") -> frozenset[str]:
    if language not in SUPPORTED_LANGUAGES:
        raise ValueError(f"no bundled stop words for language {language!r}")
    names = {"en": "english"}
    res = resources.files("storygem").joinpath(
        f"resources/stopwords/{names[language]}.txt"
    )
    return _parse_wordlist(res.read_text(encoding="utf-8"))


def load_wordlist(path: str | Path) -> frozenset[str]:
    """Word-per-line file; blank lines and '#' comments are ignored."""
    return _parse_wordlist(Path(path).read_text(encoding="utf-8"))


def _parse_wordlist(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip().lower()
        if line:
            words.add(line)
    return frozenset(words)


@dataclass(frozen=True)
class TokenFilterConfig:
    language: str = "en"
    stopwords: frozenset[str] = field(default_factory=frozenset)
    keep_lexicon: frozenset[str] | None = None
    strip_symbols_and_numbers: bool = True
    max_words: int = 150

    def __post_init__(self):
        if self.max_words < 1:
            raise ValueError("max_words must be >= 1")
        if (
            self.strip_symbols_and_numbers
            and self.language in SUPPORTED_LANGUAGES
            and not self.stopwords
        ):
            raise ValueError(
                f"stop-word list required for supported language {self.language!r}"
            )

    @classmethod
    def default(cls, **kwargs) -> "TokenFilterConfig":
        kwargs.setdefault("stopwords", default_stopwords("en"))
        return cls(**kwargs)


@dataclass
class WordEntry:
    """A surviving token with its occurrence count and (later) its vector."""

    surface: str
    count: int
    vector: np.ndarray | None = None

    def __post_init__(self):
        if not self.surface or any(c.isspace() for c in self.surface):
            raise ValueError(f"bad surface {self.surface!r}")
        if self.count < 1:
            raise ValueError("count must be >= 1")


def tokenize(text: str, config: TokenFilterConfig) -> list[str]:
    """Lowercased tokens in original order, after stop-word / symbol / lexicon
    filtering. Empty text gives an empty list."""
    out = []
    for raw in _TOKEN_RE.findall(text.lower()):
        token = raw.strip("-")
        if not token:
            continue
        if config.strip_symbols_and_numbers and not any(c.isalpha() for c in token):
            continue
        if token in config.stopwords:
            continue
        if config.keep_lexicon is not None and token not in config.keep_lexicon:
            continue
        out.append(token)
    return out


def count_words(tokens: list[str], config: TokenFilterConfig) -> list[WordEntry]:
    """One entry per distinct surface, count descending then surface ascending,
    capped at config.max_words."""
    counts = Counter(tokens)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [WordEntry(surface=s, count=c) for s, c in ranked[: config.max_words]]
