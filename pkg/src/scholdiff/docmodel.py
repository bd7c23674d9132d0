"""Document/version data model, DOI normalization, DOI-keyed matching, and
the line-oriented interchange format every pipeline stage consumes."""

from __future__ import annotations

import datetime as dt
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

__all__ = [
    "SOURCE_PREPRINT",
    "SOURCE_PUBLISHER",
    "PROV_STRUCTURED",
    "PROV_SEGMENTED",
    "SECTIONS",
    "MalformedDoi",
    "normalize_doi",
    "SectionSet",
    "Document",
    "MatchedPair",
    "UnmatchedDocument",
    "MatchConflict",
    "MatchResult",
    "match_pairs",
    "document_to_json",
    "document_from_json",
    "write_documents",
    "read_documents",
]

SOURCE_PREPRINT = "preprint-repo"
SOURCE_PUBLISHER = "publisher"
PROV_STRUCTURED = "structured-xml"
PROV_SEGMENTED = "segmented-pdf"
SECTIONS = ("title", "abstract", "body")

_SOURCES = (SOURCE_PREPRINT, SOURCE_PUBLISHER)
_PROVENANCES = (PROV_STRUCTURED, PROV_SEGMENTED)


class MalformedDoi(ValueError):
    """Raised when a string cannot be normalized into a DOI."""


# Resolver prefixes stripped before validation, matched case-insensitively.
_DOI_PREFIXES = (
    "https://doi.org/",
    "http://doi.org/",
    "https://dx.doi.org/",
    "http://dx.doi.org/",
    "info:doi/",
    "doi:",
)
_DOI_RE = re.compile(r"10\.\d{2,9}(\.\d+)*/\S+")


def normalize_doi(raw: str) -> str:
    """Strip resolver prefixes, trim, lowercase; validate the 10.<reg>/<suffix> shape."""
    s = raw.strip()
    lowered = s.lower()
    for prefix in _DOI_PREFIXES:
        if lowered.startswith(prefix):
            s = s[len(prefix):].strip()
            break
    s = s.lower()
    if not _DOI_RE.fullmatch(s):
        raise MalformedDoi(f"not a DOI: {raw!r}")
    return s


@dataclass(frozen=True)
class SectionSet:
    """Title/abstract/body texts; None records explicit absence."""

    title: str | None = None
    abstract: str | None = None
    body: str | None = None

    def __post_init__(self) -> None:
        if self.title is None and self.abstract is None and self.body is None:
            raise ValueError("a SectionSet needs at least one section present")

    def get(self, section: str) -> str | None:
        if section not in SECTIONS:
            raise ValueError(f"unknown section {section!r}")
        return getattr(self, section)

    def present(self) -> tuple[str, ...]:
        return tuple(s for s in SECTIONS if getattr(self, s) is not None)


@dataclass(frozen=True)
class Document:
    """One version of one article."""

    source_id: str
    doi: str | None
    source: str
    version_index: int
    version_date: dt.date | None
    sections: SectionSet
    provenance: str

    def __post_init__(self) -> None:
        if not self.source_id:
            raise ValueError("source_id must be non-empty")
        if self.source not in _SOURCES:
            raise ValueError(f"source must be one of {_SOURCES}, got {self.source!r}")
        if self.provenance not in _PROVENANCES:
            raise ValueError(
                f"provenance must be one of {_PROVENANCES}, got {self.provenance!r}"
            )
        if self.version_index < 1:
            raise ValueError("version_index starts at 1")
        if self.source == SOURCE_PUBLISHER and self.version_index != 1:
            raise ValueError("publisher documents carry exactly one version")


@dataclass(frozen=True)
class MatchedPair:
    """A pre-print's versions joined to the published document via DOI."""

    doi: str
    preprint_versions: tuple[Document, ...]
    published: Document

    def __post_init__(self) -> None:
        if not self.preprint_versions:
            raise ValueError("a pair needs at least one preprint version")
        indices = [d.version_index for d in self.preprint_versions]
        if sorted(set(indices)) != indices:
            raise ValueError("preprint versions must be strictly ordered by version_index")
        members = (*self.preprint_versions, self.published)
        if any(d.doi != self.doi for d in members):
            raise ValueError("all pair members must share the pair DOI")
        if any(d.source != SOURCE_PREPRINT for d in self.preprint_versions):
            raise ValueError("preprint_versions must come from the preprint repository")
        if self.published.source != SOURCE_PUBLISHER:
            raise ValueError("published member must come from the publisher side")

    def select_version(self, which: str) -> Document:
        if which == "first":
            return self.preprint_versions[0]
        if which == "last":
            return self.preprint_versions[-1]
        raise ValueError(f"which_version must be 'first' or 'last', got {which!r}")


@dataclass(frozen=True)
class UnmatchedDocument:
    source_id: str
    source: str
    reason: str  # no-doi | no-preprint | no-published | duplicate-doi | duplicate-version


@dataclass(frozen=True)
class MatchConflict:
    doi: str
    kept_source_id: str
    dropped_source_id: str
    kind: str  # duplicate-published-doi | duplicate-version-index


@dataclass
class MatchResult:
    pairs: list[MatchedPair] = field(default_factory=list)
    unmatched: list[UnmatchedDocument] = field(default_factory=list)
    conflicts: list[MatchConflict] = field(default_factory=list)


def match_pairs(
    preprints: Iterable[Document], published: Iterable[Document]
) -> MatchResult:
    """Join preprint versions to published documents on normalized DOI.

    Every input document lands in exactly one of {some pair, unmatched}.
    Duplicate published DOIs keep the first arrival (stable input order);
    the duplicate is reported both as a conflict and as unmatched.
    """
    result = MatchResult()

    by_doi_pre: dict[str, list[Document]] = {}
    for doc in preprints:
        if doc.doi is None:
            result.unmatched.append(UnmatchedDocument(doc.source_id, doc.source, "no-doi"))
            continue
        by_doi_pre.setdefault(doc.doi, []).append(doc)

    by_doi_pub: dict[str, Document] = {}
    for doc in published:
        if doc.doi is None:
            result.unmatched.append(UnmatchedDocument(doc.source_id, doc.source, "no-doi"))
            continue
        kept = by_doi_pub.get(doc.doi)
        if kept is not None:
            result.conflicts.append(
                MatchConflict(doc.doi, kept.source_id, doc.source_id, "duplicate-published-doi")
            )
            result.unmatched.append(
                UnmatchedDocument(doc.source_id, doc.source, "duplicate-doi")
            )
            continue
        by_doi_pub[doc.doi] = doc

    for doi in sorted(set(by_doi_pre) | set(by_doi_pub)):
        versions = by_doi_pre.get(doi)
        pub = by_doi_pub.get(doi)
        if versions is None:
            result.unmatched.append(
                UnmatchedDocument(pub.source_id, pub.source, "no-preprint")
            )
            continue
        if pub is None:
            for doc in versions:
                result.unmatched.append(
                    UnmatchedDocument(doc.source_id, doc.source, "no-published")
                )
            continue
        versions = sorted(versions, key=lambda d: d.version_index)
        deduped: list[Document] = []
        for doc in versions:
            if deduped and deduped[-1].version_index == doc.version_index:
                result.conflicts.append(
                    MatchConflict(doi, deduped[-1].source_id, doc.source_id,
                                  "duplicate-version-index")
                )
                result.unmatched.append(
                    UnmatchedDocument(doc.source_id, doc.source, "duplicate-version")
                )
                continue
            deduped.append(doc)
        result.pairs.append(MatchedPair(doi, tuple(deduped), pub))

    return result


# ---------------------------------------------------------------------------
# Interchange format: one JSON object per line, UTF-8, fixed field order.

_FIELDS = (
    "source_id", "doi", "source", "version_index", "version_date",
    "title", "abstract", "body", "provenance",
)


def document_to_json(doc: Document) -> str:
    record = {
        "source_id": doc.source_id,
        "doi": doc.doi,
        "source": doc.source,
        "version_index": doc.version_index,
        "version_date": doc.version_date.isoformat() if doc.version_date else None,
        "title": doc.sections.title,
        "abstract": doc.sections.abstract,
        "body": doc.sections.body,
        "provenance": doc.provenance,
    }
    return json.dumps(record, ensure_ascii=False)


def document_from_json(line: str) -> Document:
    obj = json.loads(line)
    if not isinstance(obj, dict):
        raise ValueError(f"interchange record must be an object, got {type(obj).__name__}")
    missing = [f for f in _FIELDS if f not in obj]
    if missing:
        raise ValueError(f"interchange record missing fields: {missing}")
    raw_date = obj["version_date"]
    version_date = None
    if raw_date is not None:
        # accept full timestamps; the calendar date is what the model keeps
        version_date = dt.date.fromisoformat(str(raw_date)[:10])
    return Document(
        source_id=obj["source_id"],
        doi=obj["doi"],
        source=obj["source"],
        version_index=obj["version_index"],
        version_date=version_date,
        sections=SectionSet(title=obj["title"], abstract=obj["abstract"], body=obj["body"]),
        provenance=obj["provenance"],
    )


def write_documents(path: str | Path, docs: Iterable[Document]) -> int:
    """Write records as JSON lines; returns the number written."""
    count = 0
    with Path(path).open("w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(document_to_json(doc) + "\n")
            count += 1
    return count


def read_documents(path: str | Path) -> Iterator[Document]:
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                yield document_from_json(line)
            except (ValueError, TypeError) as exc:
                raise ValueError(f"{path}:{lineno}: bad interchange record: {exc}") from exc
