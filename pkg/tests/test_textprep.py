"""Term-vector preparation chain: tokenizing, stopword removal, stemming,
counting, and the packaged stopword list."""

from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scholdiff.textprep import (
    default_stopwords,
    load_stopwords,
    parse_stopword_file,
    prepare_terms,
    remove_stopwords,
    term_counts,
    tokenize,
)


class TestTokenize:
    def test_lowercases_and_splits_on_nonword(self):
        assert tokenize("The Academic Paper!") == ["the", "academic", "paper"]

    def test_digits_kept_underscores_split(self):
        assert tokenize("alpha_beta x2 3d") == ["alpha", "beta", "x2", "3d"]

    def test_dashes_split(self):
        assert tokenize("state-of-the-art — review") == [
            "state", "of", "the", "art", "review",
        ]

    def test_unicode_letters_kept(self):
        assert tokenize("naïve café") == ["naïve", "café"]

    def test_empty(self):
        assert tokenize("") == []
        assert tokenize("  …  ") == []

    @given(st.text(max_size=80))
    @settings(max_examples=300, deadline=None)
    def test_property_tokens_lowercase_nonempty(self, text):
        for token in tokenize(text):
            assert token
            assert token == token.lower()
            assert "_" not in token


class TestStopwords:
    def test_packaged_list_shape(self):
        words = default_stopwords()
        assert len(words) == 318
        assert all(w == w.lower() for w in words)
        for expected in ("the", "and", "of", "is", "was", "however"):
            assert expected in words

    def test_parse_skips_comments_and_blanks(self):
        parsed = parse_stopword_file("# comment\n\nthe\n a \n")
        assert parsed == frozenset({"the", "a"})

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("alpha\nbeta\n# no\n")
        assert load_stopwords(path) == frozenset({"alpha", "beta"})

    def test_remove_stopwords(self):
        tokens = ["the", "quick", "fox", "and", "the", "dog"]
        assert remove_stopwords(tokens, frozenset({"the", "and"})) == [
            "quick", "fox", "dog",
        ]


class TestTermCounts:
    def test_counts(self):
        assert term_counts(["a", "b", "a"]) == Counter(a=2, b=1)

    def test_empty(self):
        assert term_counts([]) == Counter()


class TestPrepareTerms:
    def test_full_chain(self):
        # "the" drops as a stopword; studies/studied share the stem "studi".
        counts = prepare_terms("The studies studied carefully.")
        assert counts == Counter({"studi": 2, "carefulli": 1})

    def test_custom_stopwords(self):
        counts = prepare_terms("alpha beta alpha", stopwords=frozenset({"beta"}))
        assert counts == Counter({"alpha": 2})

    def test_empty_text(self):
        assert prepare_terms("") == Counter()

    def test_all_stopwords(self):
        assert prepare_terms("the and of") == Counter()

    @given(st.text(max_size=120))
    @settings(max_examples=200, deadline=None)
    def test_property_counts_positive(self, text):
        for term, count in prepare_terms(text).items():
            assert term
            assert count >= 1
