"""Section extraction from publisher full-text markup and from PDF-segmenter
output (TEI-style).

Linearization contract: block-level elements are joined by single newlines,
inline elements by nothing, and whitespace inside a block collapses to
single spaces — extraction never invents characters beyond that joining.
Publisher dialects are data-driven (see ``data/dialects.json``); unknown
roots fall back to a documented heuristic (longest text block = body).
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from .docmodel import SectionSet

__all__ = [
    "UnparsableRecord",
    "load_dialects",
    "default_dialects",
    "extract_sections_structured",
    "extract_sections_segmented",
]


class UnparsableRecord(Exception):
    """The record is not well-formed markup (or is empty)."""


# Elements that start a new line when linearizing mixed content.
_BLOCK_TAGS = {
    "p", "div", "sec", "section", "body", "abstract", "title", "article-title",
    "head", "caption", "label", "list", "item", "list-item", "table", "row",
    "tr", "td", "th", "cell", "figure", "fig", "table-wrap", "note",
}


def _local(tag: object) -> str:
    """Local element name, namespace stripped; '' for comments/PIs."""
    if not isinstance(tag, str):
        return ""
    return tag.rsplit("}", 1)[-1].lower()


def _normalize_ws(text: str) -> str:
    return " ".join(text.split())


def linearize(elem: ET.Element, exclude: frozenset[str] = frozenset()) -> str:
    """Flatten an element subtree into newline-joined block text."""
    blocks: list[str] = []
    buf: list[str] = []

    def flush() -> None:
        text = _normalize_ws("".join(buf))
        buf.clear()
        if text:
            blocks.append(text)

    def walk(e: ET.Element, include_tail: bool = True) -> None:
        local = _local(e.tag)
        if local in exclude:
            if include_tail and e.tail:
                buf.append(e.tail)
            return
        is_block = local in _BLOCK_TAGS
        if is_block:
            flush()
        if e.text:
            buf.append(e.text)
        for child in e:
            walk(child)
        if is_block:
            flush()
        if include_tail and e.tail:
            buf.append(e.tail)

    # The root's own tail belongs to the enclosing document, not the section.
    walk(elem, include_tail=False)
    flush()
    return "\n".join(blocks)


def _parse(source: str | bytes) -> ET.Element:
    if isinstance(source, str):
        stripped = source.strip()
    else:
        stripped = source.strip()
    if not stripped:
        raise UnparsableRecord("empty record")
    try:
        return ET.fromstring(source)
    except ET.ParseError as exc:
        raise UnparsableRecord(f"malformed markup: {exc}") from exc


def load_dialects(path: str | Path) -> list[dict]:
    config = json.loads(Path(path).read_text(encoding="utf-8"))
    dialects = config.get("dialects")
    if not isinstance(dialects, list):
        raise ValueError("dialect config needs a top-level 'dialects' list")
    return dialects


@lru_cache(maxsize=1)
def default_dialects() -> tuple[dict, ...]:
    text = (
        resources.files("scholdiff")
        .joinpath("data/dialects.json")
        .read_text(encoding="utf-8")
    )
    return tuple(json.loads(text)["dialects"])


def _first_match(root: ET.Element, paths: Iterable[str]) -> ET.Element | None:
    for path in paths:
        found = root.find(path)
        if found is not None:
            return found
    return None


def _section_or_none(elem: ET.Element | None, exclude: frozenset[str]) -> str | None:
    if elem is None:
        return None
    text = linearize(elem, exclude)
    return text if text else None


def extract_sections_structured(
    source: str | bytes, dialects: Iterable[dict] | None = None
) -> SectionSet:
    """Extract title/abstract/body from a publisher full-text record.

    The dialect whose ``root_tags`` matches the document root supplies the
    element paths; with no matching dialect a generic heuristic applies:
    first title-like and abstract elements, then the longest remaining text
    block as the body.
    """
    root = _parse(source)
    root_local = _local(root.tag)
    for dialect in dialects if dialects is not None else default_dialects():
        if root_local in {t.lower() for t in dialect.get("root_tags", ())}:
            exclude = frozenset(t.lower() for t in dialect.get("exclude", ()))
            title = _section_or_none(_first_match(root, dialect.get("title", ())), exclude)
            abstract = _section_or_none(
                _first_match(root, dialect.get("abstract", ())), exclude
            )
            body = _section_or_none(_first_match(root, dialect.get("body", ())), exclude)
            if title is None and abstract is None and body is None:
                raise UnparsableRecord(
                    f"dialect {dialect.get('name', '?')!r} matched root "
                    f"{root_local!r} but found no sections"
                )
            return SectionSet(title=title, abstract=abstract, body=body)
    return _generic_fallback(root)


_TITLE_TAGS = ("article-title", "title")
_HEADERISH = frozenset(_TITLE_TAGS) | {"abstract"}


def _generic_fallback(root: ET.Element) -> SectionSet:
    """Heuristic for unknown dialects (documented, approximate).

    Title: first title-like element.  Abstract: first abstract element.
    Body: the child subtree (unwrapping single-child wrappers) with the most
    text, title/abstract elements excluded.
    """
    title_el = None
    for tag in _TITLE_TAGS:
        title_el = root.find(f".//{{*}}{tag}")
        if title_el is not None:
            break
    abstract_el = root.find(".//{*}abstract")

    container = root
    while len(container) == 1 and _local(container[0].tag) not in _HEADERISH:
        container = container[0]
    body_text: str | None = None
    best_len = 0
    for child in container:
        if _local(child.tag) in _HEADERISH:
            continue
        text = linearize(child, exclude=_HEADERISH)
        if len(text) > best_len:
            best_len = len(text)
            body_text = text
    if body_text is not None and not body_text:
        body_text = None

    title = _section_or_none(title_el, frozenset())
    abstract = _section_or_none(abstract_el, frozenset())
    if title is None and abstract is None and body_text is None:
        raise UnparsableRecord("no recognizable sections in record")
    return SectionSet(title=title, abstract=abstract, body=body_text)


# Subtrees dropped from segmenter body text: figures/tables and embedded
# bibliographies; the back matter never enters (only text/body is walked).
_SEGMENTED_BODY_EXCLUDE = frozenset({"figure", "listbibl", "biblstruct"})


def extract_sections_segmented(source: str | bytes) -> SectionSet:
    """Extract sections from TEI-style PDF-segmenter output.

    Title comes from the header's titleStmt, abstract from the header's
    profileDesc, body from the text-body divisions in order; reference lists
    and figures are excluded from the body.
    """
    root = _parse(source)
    if _local(root.tag) != "tei":
        raise UnparsableRecord(
            f"expected TEI-style segmenter output, got root {_local(root.tag)!r}"
        )
    title = _section_or_none(
        root.find(".//{*}teiHeader//{*}titleStmt/{*}title"), frozenset()
    )
    abstract = _section_or_none(
        root.find(".//{*}teiHeader//{*}profileDesc/{*}abstract"), frozenset()
    )
    body_el = root.find(".//{*}text/{*}body")
    body = _section_or_none(body_el, _SEGMENTED_BODY_EXCLUDE)
    if title is None and abstract is None and body is None:
        raise UnparsableRecord("segmenter output carries no sections")
    return SectionSet(title=title, abstract=abstract, body=body)
