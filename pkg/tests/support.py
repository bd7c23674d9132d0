"""Shared helpers for the test suite: scripted transports, OAI-PMH page
builders, and document factories.  No test touches the live network."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from scholdiff.docmodel import (
    Document,
    PROV_STRUCTURED,
    SOURCE_PREPRINT,
    SOURCE_PUBLISHER,
    SectionSet,
)
from scholdiff.harvest import Response


@dataclass
class Call:
    url: str
    params: dict


class RecordedTransport:
    """Scripted transport.  Each request consumes the next responder, which
    may be a Response, an exception to raise, or a callable
    ``(url, params) -> Response``.  Requests beyond the script fail loudly."""

    def __init__(self) -> None:
        self.calls: list[Call] = []
        self._script: list = []

    def enqueue(self, *responders) -> "RecordedTransport":
        self._script.extend(responders)
        return self

    @property
    def exhausted(self) -> bool:
        return not self._script

    def get(self, url, params=None) -> Response:
        self.calls.append(Call(url, dict(params or {})))
        if not self._script:
            raise AssertionError(f"unexpected request: {url} params={params}")
        responder = self._script.pop(0)
        if isinstance(responder, BaseException):
            raise responder
        if callable(responder):
            return responder(url, dict(params or {}))
        return responder


def ok(body: bytes | str, headers: dict | None = None, status: int = 200,
       url: str = "http://service.test/") -> Response:
    if isinstance(body, str):
        body = body.encode("utf-8")
    return Response(status=status, headers=headers or {}, body=body, url=url)


# ---------------------------------------------------------------------------
# OAI-PMH page construction


def oai_record_xml(identifier: str, datestamp: str, fields: dict | None = None,
                   deleted: bool = False, set_spec: str = "") -> str:
    if deleted:
        return (
            f'<record><header status="deleted">'
            f"<identifier>{escape(identifier)}</identifier>"
            f"<datestamp>{datestamp}</datestamp></header></record>"
        )
    parts = [
        "<record><header>",
        f"<identifier>{escape(identifier)}</identifier>",
        f"<datestamp>{datestamp}</datestamp>",
    ]
    if set_spec:
        parts.append(f"<setSpec>{escape(set_spec)}</setSpec>")
    parts.append("</header><metadata>")
    parts.append('<oai_dc:dc xmlns:oai_dc="http://www.openarchives.org/OAI/2.0/oai_dc/" '
                 'xmlns:dc="http://purl.org/dc/elements/1.1/">')
    for name, values in (fields or {}).items():
        if isinstance(values, str):
            values = [values]
        for value in values:
            parts.append(f"<dc:{name}>{escape(value)}</dc:{name}>")
    parts.append("</oai_dc:dc></metadata></record>")
    return "".join(parts)


def oai_page(records: list[str], token: str | None = None,
             error: tuple[str, str] | None = None) -> bytes:
    inner = ""
    if error is not None:
        code, message = error
        inner = f'<error code="{code}">{escape(message)}</error>'
    else:
        body = "".join(records)
        token_xml = (
            f"<resumptionToken>{escape(token)}</resumptionToken>" if token else ""
        )
        inner = f"<ListRecords>{body}{token_xml}</ListRecords>"
    return (
        '<?xml version="1.0" encoding="UTF-8"?>'
        '<OAI-PMH xmlns="http://www.openarchives.org/OAI/2.0/">'
        "<responseDate>2016-01-01T00:00:00Z</responseDate>"
        f"{inner}</OAI-PMH>"
    ).encode("utf-8")


# ---------------------------------------------------------------------------
# document factories


def make_document(
    source_id: str = "oai:test:1",
    doi: str | None = "10.1234/example.1",
    source: str = SOURCE_PREPRINT,
    version_index: int = 1,
    version_date: dt.date | None = dt.date(2015, 6, 1),
    title: str | None = "A title",
    abstract: str | None = "An abstract.",
    body: str | None = None,
    provenance: str = PROV_STRUCTURED,
) -> Document:
    return Document(
        source_id=source_id,
        doi=doi,
        source=source,
        version_index=version_index,
        version_date=version_date,
        sections=SectionSet(title=title, abstract=abstract, body=body),
        provenance=provenance,
    )


def make_published(**kwargs) -> Document:
    kwargs.setdefault("source_id", "pub:test:1")
    kwargs.setdefault("source", SOURCE_PUBLISHER)
    return make_document(**kwargs)
