"""Deterministic text normalization feeding the cosine measure.

The chain is tokenize -> remove_stopwords -> porter_stem -> term_counts.
Only the cosine measure consumes it; every other measure operates on raw
section text.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from .porter import porter_stem

__all__ = [
    "tokenize",
    "remove_stopwords",
    "porter_stem",
    "term_counts",
    "prepare_terms",
    "parse_stopword_file",
    "load_stopwords",
    "default_stopwords",
]

# Word characters minus underscore: splits on any maximal run of
# non-alphanumeric characters, keeps numerals.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Case-fold and split into tokens on runs of non-alphanumeric characters."""
    return _TOKEN_RE.findall(text.lower())


def remove_stopwords(tokens: Iterable[str], stopwords: frozenset[str] | set[str]) -> list[str]:
    """Drop stopword tokens, preserving the order of survivors."""
    return [t for t in tokens if t not in stopwords]


def term_counts(tokens: Iterable[str]) -> Counter[str]:
    """Exact occurrence counts of the given (already stemmed) tokens."""
    return Counter(tokens)


def prepare_terms(text: str, stopwords: frozenset[str] | set[str] | None = None) -> Counter[str]:
    """Run the full chain on raw text and return stemmed term counts.

    Tokens that would stem to the empty string are dropped (cannot happen
    under the Porter rules for non-empty input, but guarded anyway).
    """
    if stopwords is None:
        stopwords = default_stopwords()
    stems = (porter_stem(t) for t in remove_stopwords(tokenize(text), stopwords))
    return Counter(s for s in stems if s)


def parse_stopword_file(text: str) -> frozenset[str]:
    """Parse stopword file content: one word per line, ``#`` comments ignored."""
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.add(line)
    return frozenset(words)


def load_stopwords(path: str | Path) -> frozenset[str]:
    return parse_stopword_file(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    """The packaged 318-word English stopword list."""
    text = (
        resources.files("scholdiff")
        .joinpath("data/stopwords_english.txt")
        .read_text(encoding="utf-8")
    )
    return parse_stopword_file(text)
