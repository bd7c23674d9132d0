"""Document model: DOI normalization, validation, DOI-keyed matching, and
the JSON-lines interchange format."""

from __future__ import annotations

import datetime as dt
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scholdiff.docmodel import (
    Document,
    MalformedDoi,
    MatchedPair,
    PROV_SEGMENTED,
    PROV_STRUCTURED,
    SOURCE_PREPRINT,
    SOURCE_PUBLISHER,
    SectionSet,
    document_from_json,
    document_to_json,
    match_pairs,
    normalize_doi,
    read_documents,
    write_documents,
)
from support import make_document, make_published


class TestNormalizeDoi:
    @pytest.mark.parametrize(
        "raw",
        [
            "10.1234/abc.5",
            "https://doi.org/10.1234/abc.5",
            "http://doi.org/10.1234/abc.5",
            "https://dx.doi.org/10.1234/abc.5",
            "http://dx.doi.org/10.1234/abc.5",
            "info:doi/10.1234/abc.5",
            "doi:10.1234/abc.5",
            "DOI:10.1234/ABC.5",
            "  https://doi.org/10.1234/abc.5  ",
        ],
    )
    def test_prefix_forms_collapse(self, raw):
        assert normalize_doi(raw) == "10.1234/abc.5"

    def test_lowercases_suffix(self):
        assert normalize_doi("10.1234/J.CELL.2015.01.002") == "10.1234/j.cell.2015.01.002"

    def test_idempotent(self):
        once = normalize_doi("doi:10.5555/Some.Thing")
        assert normalize_doi(once) == once

    def test_registrant_subdivisions(self):
        assert normalize_doi("10.1234.5/xyz") == "10.1234.5/xyz"

    @pytest.mark.parametrize(
        "bad", ["", "doi:", "11.1234/abc", "10.1/abc", "10.1234", "10.1234/", "not a doi"]
    )
    def test_rejects_non_dois(self, bad):
        with pytest.raises(MalformedDoi):
            normalize_doi(bad)


class TestSectionSet:
    def test_requires_one_section(self):
        with pytest.raises(ValueError):
            SectionSet()

    def test_get_and_present(self):
        sections = SectionSet(title="T", body="B")
        assert sections.get("title") == "T"
        assert sections.get("abstract") is None
        assert sections.present() == ("title", "body")

    def test_get_rejects_unknown(self):
        with pytest.raises(ValueError):
            SectionSet(title="T").get("references")


class TestDocumentValidation:
    def test_valid(self):
        doc = make_document()
        assert doc.version_index == 1

    def test_rejects_bad_source(self):
        with pytest.raises(ValueError):
            make_document(source="blog")

    def test_rejects_bad_provenance(self):
        with pytest.raises(ValueError):
            make_document(provenance="ocr")

    def test_rejects_zero_version(self):
        with pytest.raises(ValueError):
            make_document(version_index=0)

    def test_publisher_is_single_version(self):
        with pytest.raises(ValueError):
            make_published(version_index=2)

    def test_rejects_empty_source_id(self):
        with pytest.raises(ValueError):
            make_document(source_id="")


class TestMatchedPair:
    def test_select_version(self):
        v1 = make_document(version_index=1)
        v2 = make_document(version_index=2)
        pair = MatchedPair(v1.doi, (v1, v2), make_published())
        assert pair.select_version("first") is v1
        assert pair.select_version("last") is v2
        with pytest.raises(ValueError):
            pair.select_version("middle")

    def test_requires_shared_doi(self):
        with pytest.raises(ValueError):
            MatchedPair(
                "10.1234/other",
                (make_document(),),
                make_published(),
            )

    def test_requires_ordered_versions(self):
        v2 = make_document(version_index=2)
        v1 = make_document(version_index=1)
        with pytest.raises(ValueError):
            MatchedPair(v1.doi, (v2, v1), make_published())

    def test_requires_sides(self):
        with pytest.raises(ValueError):
            MatchedPair(
                make_published().doi, (make_published(),), make_published()
            )


class TestMatchPairs:
    def test_three_matchable_dois(self):
        preprints = [
            make_document(source_id=f"oai:{i}", doi=f"10.1234/p.{i}") for i in range(3)
        ]
        published = [
            make_published(source_id=f"pub:{i}", doi=f"10.1234/p.{i}") for i in range(3)
        ]
        result = match_pairs(preprints, published)
        assert len(result.pairs) == 3
        assert [p.doi for p in result.pairs] == sorted(p.doi for p in result.pairs)
        assert not result.unmatched and not result.conflicts

    def test_preprints_only(self):
        result = match_pairs([make_document()], [])
        assert not result.pairs
        assert [u.reason for u in result.unmatched] == ["no-published"]

    def test_published_only(self):
        result = match_pairs([], [make_published()])
        assert [u.reason for u in result.unmatched] == ["no-preprint"]

    def test_missing_doi(self):
        result = match_pairs([make_document(doi=None)], [])
        assert [u.reason for u in result.unmatched] == ["no-doi"]

    def test_duplicate_published_doi_first_wins(self):
        preprint = make_document()
        first = make_published(source_id="pub:first")
        second = make_published(source_id="pub:second")
        result = match_pairs([preprint], [first, second])
        assert len(result.pairs) == 1
        assert result.pairs[0].published.source_id == "pub:first"
        assert [c.kind for c in result.conflicts] == ["duplicate-published-doi"]
        assert result.conflicts[0].kept_source_id == "pub:first"
        assert [u.source_id for u in result.unmatched] == ["pub:second"]

    def test_multi_version_ordering(self):
        versions = [
            make_document(source_id="oai:a", version_index=i) for i in (2, 1, 3)
        ]
        result = match_pairs(versions, [make_published()])
        (pair,) = result.pairs
        assert [d.version_index for d in pair.preprint_versions] == [1, 2, 3]
        assert pair.select_version("first").version_index == 1
        assert pair.select_version("last").version_index == 3

    def test_duplicate_version_index_keeps_first(self):
        a = make_document(source_id="oai:a", version_index=1, title="kept")
        b = make_document(source_id="oai:b", version_index=1, title="dropped")
        result = match_pairs([a, b], [make_published()])
        (pair,) = result.pairs
        assert pair.preprint_versions[0].sections.title == "kept"


class TestInterchange:
    def test_round_trip(self):
        doc = make_document(body="Some body text.", version_date=dt.date(2014, 3, 1))
        assert document_from_json(document_to_json(doc)) == doc

    def test_field_order_stable(self):
        line = document_to_json(make_document())
        assert list(json.loads(line).keys()) == [
            "source_id", "doi", "source", "version_index", "version_date",
            "title", "abstract", "body", "provenance",
        ]

    def test_null_fields_round_trip(self):
        doc = make_document(doi=None, version_date=None, abstract=None, body=None)
        parsed = document_from_json(document_to_json(doc))
        assert parsed.doi is None
        assert parsed.version_date is None
        assert parsed.sections.abstract is None

    def test_timestamp_dates_accepted(self):
        line = document_to_json(make_document())
        payload = json.loads(line)
        payload["version_date"] = "2014-03-01T12:30:00Z"
        parsed = document_from_json(json.dumps(payload))
        assert parsed.version_date == dt.date(2014, 3, 1)

    def test_unicode_preserved(self):
        doc = make_document(title="Präzision — 中文 title")
        assert document_from_json(document_to_json(doc)).sections.title == doc.sections.title

    def test_missing_field_rejected(self):
        payload = json.loads(document_to_json(make_document()))
        del payload["source"]
        with pytest.raises((ValueError, TypeError)):
            document_from_json(json.dumps(payload))

    def test_file_round_trip(self, tmp_path):
        docs = [
            make_document(source_id=f"oai:{i}", version_date=dt.date(2015, 1, 1 + i))
            for i in range(5)
        ]
        path = tmp_path / "docs.jsonl"
        assert write_documents(path, docs) == 5
        assert list(read_documents(path)) == docs

    def test_read_error_names_line(self, tmp_path):
        path = tmp_path / "docs.jsonl"
        path.write_text(document_to_json(make_document()) + "\n{broken\n")
        with pytest.raises(ValueError, match=r":2:"):
            list(read_documents(path))

    @given(
        st.text(min_size=1, max_size=20).filter(str.strip),
        st.one_of(st.none(), st.dates(dt.date(1990, 1, 1), dt.date(2030, 1, 1))),
        st.text(max_size=50),
    )
    @settings(max_examples=100, deadline=None)
    def test_property_round_trip(self, source_id, date, title):
        doc = make_document(
            source_id=source_id, version_date=date, title=title + "x"
        )
        assert document_from_json(document_to_json(doc)) == doc
