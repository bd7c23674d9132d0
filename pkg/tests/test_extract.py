"""Section extraction from structured article XML and from segmenter output,
including linearization rules and the no-invented-text guarantee."""

from __future__ import annotations

import re

import pytest

from scholdiff.extract import (
    UnparsableRecord,
    extract_sections_segmented,
    extract_sections_structured,
    linearize,
)

import xml.etree.ElementTree as ET

JATS_SAMPLE = """
<article xmlns:xlink="http://www.w3.org/1999/xlink">
  <front>
    <article-meta>
      <title-group>
        <article-title>Gene  expression in <italic>E. coli</italic></article-title>
      </title-group>
      <abstract>
        <p>We measure expression.</p>
        <p>Results follow.</p>
      </abstract>
    </article-meta>
  </front>
  <body>
    <sec>
      <title>Introduction</title>
      <p>Expression varies <italic>strongly</italic> with temperature.</p>
    </sec>
    <sec>
      <title>Methods</title>
      <p>We sequenced everything twice.</p>
    </sec>
  </body>
  <back>
    <ref-list>
      <ref><mixed-citation>Someone (1999) Irrelevant.</mixed-citation></ref>
    </ref-list>
  </back>
</article>
"""

COREDATA_SAMPLE = """
<full-text-retrieval-response xmlns:dc="http://purl.org/dc/elements/1.1/">
  <coredata>
    <dc:title>Plasma dynamics</dc:title>
    <dc:description>We study plasma.</dc:description>
  </coredata>
  <originalText>
    <p>First paragraph of the article.</p>
    <p>Second paragraph.</p>
    <ref-list><ref>Skip me.</ref></ref-list>
  </originalText>
</full-text-retrieval-response>
"""

TEI_SAMPLE = """
<TEI xmlns="http://www.tei-c.org/ns/1.0">
  <teiHeader>
    <fileDesc>
      <titleStmt><title>Segmented article title</title></titleStmt>
      <profileDesc>
        <abstract><p>Recovered abstract text.</p></abstract>
      </profileDesc>
    </fileDesc>
  </teiHeader>
  <text>
    <body>
      <div><head>Intro</head><p>Body paragraph one.</p></div>
      <figure><figDesc>A chart that must not leak.</figDesc></figure>
      <div><p>Body paragraph two.</p></div>
      <listBibl><biblStruct><note>A reference entry.</note></biblStruct></listBibl>
    </body>
  </text>
</TEI>
"""


class TestStructuredJats:
    def test_sections(self):
        sections = extract_sections_structured(JATS_SAMPLE)
        assert sections.title == "Gene expression in E. coli"
        assert sections.abstract == "We measure expression.\nResults follow."
        assert "Expression varies strongly with temperature." in sections.body
        assert "We sequenced everything twice." in sections.body

    def test_reference_list_excluded(self):
        sections = extract_sections_structured(JATS_SAMPLE)
        assert "Irrelevant" not in (sections.body or "")

    def test_whitespace_collapsed(self):
        sections = extract_sections_structured(JATS_SAMPLE)
        assert "  " not in sections.title

    def test_bytes_input(self):
        sections = extract_sections_structured(JATS_SAMPLE.encode("utf-8"))
        assert sections.title == "Gene expression in E. coli"


class TestStructuredCoredata:
    def test_sections(self):
        sections = extract_sections_structured(COREDATA_SAMPLE)
        assert sections.title == "Plasma dynamics"
        assert sections.abstract == "We study plasma."
        assert "First paragraph of the article." in sections.body
        assert "Skip me." not in sections.body


class TestGenericFallback:
    def test_unknown_root_still_extracts(self):
        xml = """
        <record>
          <title>Fallback title</title>
          <abstract>Fallback abstract.</abstract>
          <content>
            <p>Long enough body text to win the longest-subtree contest.</p>
            <p>More of it here.</p>
          </content>
        </record>
        """
        sections = extract_sections_structured(xml)
        assert sections.title == "Fallback title"
        assert sections.abstract == "Fallback abstract."
        assert "longest-subtree contest" in sections.body


class TestStructuredErrors:
    @pytest.mark.parametrize("bad", ["", "   ", "<broken", "<a><b></a>"])
    def test_unparsable_input(self, bad):
        with pytest.raises(UnparsableRecord):
            extract_sections_structured(bad)

    def test_no_recoverable_sections(self):
        with pytest.raises(UnparsableRecord):
            extract_sections_structured("<empty/>")


class TestSegmentedTei:
    def test_sections(self):
        sections = extract_sections_segmented(TEI_SAMPLE)
        assert sections.title == "Segmented article title"
        assert sections.abstract == "Recovered abstract text."
        assert "Body paragraph one." in sections.body
        assert "Body paragraph two." in sections.body

    def test_figures_and_bibliography_excluded(self):
        sections = extract_sections_segmented(TEI_SAMPLE)
        assert "must not leak" not in sections.body
        assert "reference entry" not in sections.body

    def test_rejects_non_tei_root(self):
        with pytest.raises(UnparsableRecord):
            extract_sections_segmented(JATS_SAMPLE)

    def test_rejects_garbage(self):
        with pytest.raises(UnparsableRecord):
            extract_sections_segmented("<broken")


class TestLinearize:
    def test_block_children_joined_by_newline(self):
        elem = ET.fromstring("<body><p>One.</p><p>Two.</p></body>")
        assert linearize(elem) == "One.\nTwo."

    def test_inline_children_joined_without_separator(self):
        elem = ET.fromstring("<p>alpha <b>beta</b> gamma</p>")
        assert linearize(elem) == "alpha beta gamma"

    def test_root_tail_excluded(self):
        outer = ET.fromstring("<doc><wrap><p>kept</p></wrap>stray tail</doc>")
        wrap = outer.find("wrap")
        # The tail belongs to the enclosing document, not to the element.
        assert wrap.tail == "stray tail"
        assert linearize(wrap) == "kept"

    def test_excluded_subtree_keeps_its_tail(self):
        elem = ET.fromstring("<p>before <skip>gone</skip> after</p>")
        assert linearize(elem, exclude=frozenset({"skip"})) == "before after"

    def test_empty_element(self):
        assert linearize(ET.fromstring("<p/>")) == ""


def _text_tokens(xml_text: str) -> set[str]:
    tokens: set[str] = set()
    root = ET.fromstring(xml_text)
    for elem in root.iter():
        for chunk in (elem.text, elem.tail):
            if chunk:
                tokens.update(chunk.split())
    return tokens


class TestNoInventedText:
    """Every whitespace-delimited token of any extracted section appears
    verbatim somewhere in the source markup's text nodes."""

    @pytest.mark.parametrize(
        "xml,extractor",
        [
            (JATS_SAMPLE, extract_sections_structured),
            (COREDATA_SAMPLE, extract_sections_structured),
            (TEI_SAMPLE, extract_sections_segmented),
        ],
    )
    def test_output_tokens_come_from_input(self, xml, extractor):
        allowed = _text_tokens(xml)
        sections = extractor(xml)
        for name in ("title", "abstract", "body"):
            text = sections.get(name)
            if text is None:
                continue
            for token in re.split(r"\s+", text):
                if token:
                    assert token in allowed, (name, token)
