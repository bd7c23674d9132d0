"""Networked acquisition: OAI-PMH metadata harvesting with resumption-token
paging, and DOI-to-full-text resolution against a works REST endpoint.

Every HTTP request goes through a pluggable transport, so the module is
fully testable against recorded fixtures with zero live traffic.  The
polite session serializes requests per host, enforces a minimum interval
between request starts, and retries transient failures with exponential
backoff and jitter.
"""

from __future__ import annotations

import datetime as dt
import json
import random
import threading
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Protocol
from urllib.parse import urlsplit

from .docmodel import MalformedDoi, normalize_doi

__all__ = [
    "Response",
    "Transport",
    "HttpTransport",
    "PoliteSession",
    "TransportError",
    "ProtocolError",
    "TokenExpired",
    "NotFound",
    "MalformedResponse",
    "OaiRecord",
    "HarvestStats",
    "harvest_metadata",
    "FullTextLink",
    "resolve_fulltext",
]


class TransportError(Exception):
    """Network-level failure (connection errors, 5xx after retries)."""


class ProtocolError(Exception):
    """The service answered with a protocol-level error (e.g. badArgument)."""

    def __init__(self, code: str, message: str = "") -> None:
        super().__init__(f"{code}: {message}" if message else code)
        self.code = code


class TokenExpired(ProtocolError):
    """Resumption token rejected and the window could not be restarted."""

    def __init__(self, message: str) -> None:
        super().__init__("badResumptionToken", message)


class NotFound(Exception):
    """The service knows nothing under the requested identifier."""


class MalformedResponse(Exception):
    """The service answered 200 with an uninterpretable payload."""


@dataclass(frozen=True)
class Response:
    status: int
    headers: Mapping[str, str]
    body: bytes
    url: str

    def header(self, name: str) -> str | None:
        for key, value in self.headers.items():
            if key.lower() == name.lower():
                return value
        return None


class Transport(Protocol):
    def get(self, url: str, params: Mapping[str, str] | None = None) -> Response: ...


class HttpTransport:
    """Concrete transport backed by the requests library."""

    def __init__(self, timeout: float = 60.0, user_agent: str = "scholdiff/0.1") -> None:
        self.timeout = timeout
        self.user_agent = user_agent

    def get(self, url: str, params: Mapping[str, str] | None = None) -> Response:
        import requests

        try:
            resp = requests.get(
                url,
                params=dict(params) if params else None,
                timeout=self.timeout,
                headers={"User-Agent": self.user_agent},
            )
        except requests.RequestException as exc:
            raise TransportError(f"request to {url} failed: {exc}") from exc
        return Response(
            status=resp.status_code,
            headers=dict(resp.headers),
            body=resp.content,
            url=resp.url,
        )


class PoliteSession:
    """Throttled, retrying wrapper around a transport.

    Requests to one host never start closer together than
    ``min_request_interval`` seconds; distinct hosts proceed independently,
    so callers may fan out across hosts with threads.  Transient failures
    (transport errors, 429, 5xx) are retried up to ``max_retries`` times
    with exponential backoff plus jitter.  ``request_log`` records every
    (host, start-time) for politeness assertions in tests.
    """

    def __init__(
        self,
        transport: Transport,
        min_request_interval: float = 1.0,
        max_retries: int = 3,
        backoff_base: float = 0.5,
        *,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
        rng: random.Random | None = None,
    ) -> None:
        if min_request_interval <= 0:
            raise ValueError("min_request_interval must be positive")
        self.transport = transport
        self.min_request_interval = min_request_interval
        self.max_retries = max_retries
        self.backoff_base = backoff_base
        self.clock = clock
        self.sleep = sleep
        self.rng = rng if rng is not None else random.Random()
        self.request_log: list[tuple[str, float]] = []
        self._last_start: dict[str, float] = {}
        self._host_locks: dict[str, threading.Lock] = {}
        self._state_lock = threading.Lock()

    def _host_lock(self, host: str) -> threading.Lock:
        with self._state_lock:
            lock = self._host_locks.get(host)
            if lock is None:
                lock = self._host_locks[host] = threading.Lock()
            return lock

    def _throttled_get(self, host: str, url: str, params) -> Response:
        with self._host_lock(host):
            now = self.clock()
            last = self._last_start.get(host)
            if last is not None:
                wait = last + self.min_request_interval - now
                if wait > 0:
                    self.sleep(wait)
                    now = self.clock()
            with self._state_lock:
                self._last_start[host] = now
                self.request_log.append((host, now))
            return self.transport.get(url, params)

    def get(self, url: str, params: Mapping[str, str] | None = None) -> Response:
        host = urlsplit(url).netloc or url
        failure: TransportError | None = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                backoff = self.backoff_base * (2 ** (attempt - 1))
                self.sleep(backoff + self.rng.uniform(0, self.backoff_base))
            try:
                resp = self._throttled_get(host, url, params)
            except TransportError as exc:
                failure = exc
                continue
            if resp.status == 429 or resp.status >= 500:
                failure = TransportError(f"HTTP {resp.status} from {url}")
                continue
            return resp
        raise TransportError(
            f"{failure} (after {self.max_retries} retries)"
        ) from failure


# ---------------------------------------------------------------------------
# OAI-PMH

_OAI_NS = "{http://www.openarchives.org/OAI/2.0/}"


@dataclass(frozen=True)
class OaiRecord:
    """One metadata record: identifier, datestamp, Dublin Core field map."""

    identifier: str
    datestamp: dt.date
    metadata: Mapping[str, tuple[str, ...]]
    set_spec: str = ""

    def field_values(self, name: str) -> tuple[str, ...]:
        return self.metadata.get(name, ())

    def find_doi(self) -> str | None:
        """First normalizable DOI among identifier/relation entries."""
        for name in ("identifier", "relation"):
            for value in self.field_values(name):
                try:
                    return normalize_doi(value)
                except MalformedDoi:
                    continue
        return None


@dataclass
class HarvestStats:
    pages: int = 0
    yielded: int = 0
    deleted_skipped: int = 0
    duplicate_skipped: int = 0
    token_restarts: int = 0


_MAX_TOKEN_RESTARTS = 3


def _parse_oai_page(body: bytes, url: str) -> ET.Element:
    try:
        return ET.fromstring(body)
    except ET.ParseError as exc:
        raise ProtocolError("unparsable-response", f"{url}: {exc}") from exc


def _record_from_element(rec_el: ET.Element) -> tuple[OaiRecord | None, bool, str]:
    """Returns (record, deleted?, raw datestamp)."""
    header = rec_el.find(f"{_OAI_NS}header")
    if header is None:
        raise ProtocolError("bad-record", "record without header")
    identifier = (header.findtext(f"{_OAI_NS}identifier") or "").strip()
    raw_stamp = (header.findtext(f"{_OAI_NS}datestamp") or "").strip()
    if header.get("status") == "deleted":
        return None, True, raw_stamp
    if not identifier or not raw_stamp:
        raise ProtocolError("bad-record", "record missing identifier or datestamp")
    datestamp = dt.date.fromisoformat(raw_stamp[:10])
    set_spec = (header.findtext(f"{_OAI_NS}setSpec") or "").strip()

    metadata: dict[str, tuple[str, ...]] = {}
    meta_el = rec_el.find(f"{_OAI_NS}metadata")
    if meta_el is not None and len(meta_el):
        ordered: dict[str, list[str]] = {}
        for child in meta_el[0]:
            local = child.tag.rsplit("}", 1)[-1]
            text = (child.text or "").strip()
            if text:
                ordered.setdefault(local, []).append(text)
        metadata = {k: tuple(v) for k, v in ordered.items()}
    return OaiRecord(identifier, datestamp, metadata, set_spec), False, raw_stamp


def harvest_metadata(
    endpoint: str,
    session: PoliteSession,
    *,
    set_filter: str | None = None,
    from_date: str | None = None,
    until_date: str | None = None,
    metadata_prefix: str = "oai_dc",
    stats: HarvestStats | None = None,
) -> Iterator[OaiRecord]:
    """Stream ListRecords results, following resumption tokens to the end.

    Yields every record exactly once (a seen-identifier set also covers the
    overlap after an expired-token window restart); deleted records are
    skipped and counted in ``stats``.
    """
    if from_date and until_date and from_date > until_date:
        raise ValueError("from_date must not exceed until_date")
    if stats is None:
        stats = HarvestStats()

    def base_params(window_from: str | None) -> dict[str, str]:
        params = {"verb": "ListRecords", "metadataPrefix": metadata_prefix}
        if set_filter:
            params["set"] = set_filter
        if window_from:
            params["from"] = window_from
        if until_date:
            params["until"] = until_date
        return params

    seen: set[str] = set()
    last_stamp: str | None = from_date
    params = base_params(from_date)
    paging = False

    while True:
        resp = session.get(endpoint, params)
        if resp.status != 200:
            raise TransportError(f"HTTP {resp.status} from {endpoint}")
        root = _parse_oai_page(resp.body, endpoint)
        stats.pages += 1

        error = root.find(f"{_OAI_NS}error")
        if error is not None:
            code = (error.get("code") or "unknown").strip()
            message = (error.text or "").strip()
            if code == "noRecordsMatch":
                return
            if code == "badResumptionToken" and paging:
                if stats.token_restarts >= _MAX_TOKEN_RESTARTS:
                    raise TokenExpired(
                        f"token kept expiring after {stats.token_restarts} restarts"
                    )
                stats.token_restarts += 1
                params = base_params(last_stamp)
                paging = False
                continue
            raise ProtocolError(code, message)

        container = root.find(f"{_OAI_NS}ListRecords")
        if container is None:
            raise ProtocolError("bad-response", "missing ListRecords container")

        for rec_el in container.findall(f"{_OAI_NS}record"):
            record, deleted, raw_stamp = _record_from_element(rec_el)
            if raw_stamp and (last_stamp is None or raw_stamp > last_stamp):
                last_stamp = raw_stamp
            if deleted:
                stats.deleted_skipped += 1
                continue
            if record.identifier in seen:
                stats.duplicate_skipped += 1
                continue
            seen.add(record.identifier)
            stats.yielded += 1
            yield record

        token_el = container.find(f"{_OAI_NS}resumptionToken")
        token = (token_el.text or "").strip() if token_el is not None else ""
        if not token:
            return
        params = {"verb": "ListRecords", "resumptionToken": token}
        paging = True


# ---------------------------------------------------------------------------
# Full-text resolution

@dataclass(frozen=True)
class FullTextLink:
    doi: str
    url: str
    content_type: str
    license_note: str | None = None

    def __post_init__(self) -> None:
        if not self.url:
            raise ValueError("a full-text link needs a URL")


def resolve_fulltext(
    doi: str, service_base: str, session: PoliteSession
) -> list[FullTextLink]:
    """Query a works endpoint for the full-text links advertised for a DOI."""
    url = f"{service_base.rstrip('/')}/works/{doi}"
    resp = session.get(url)
    if resp.status == 404:
        raise NotFound(doi)
    if resp.status != 200:
        raise TransportError(f"HTTP {resp.status} from {url}")
    try:
        payload = json.loads(resp.body.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedResponse(f"{url}: {exc}") from exc
    message = payload.get("message") if isinstance(payload, dict) else None
    if not isinstance(message, dict):
        raise MalformedResponse(f"{url}: no message object in payload")

    license_note = None
    licenses = message.get("license")
    if isinstance(licenses, list) and licenses:
        first = licenses[0]
        if isinstance(first, dict):
            license_note = first.get("URL")

    links: list[FullTextLink] = []
    for entry in message.get("link") or []:
        if not isinstance(entry, dict):
            continue
        link_url = entry.get("URL") or ""
        if not link_url:
            continue
        links.append(
            FullTextLink(
                doi=doi,
                url=link_url,
                content_type=entry.get("content-type") or "",
                license_note=license_note,
            )
        )
    return links
