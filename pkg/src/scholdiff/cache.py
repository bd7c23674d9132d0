"""Content-addressed on-disk cache for bulk full-text downloads.

Layout under the cache root:

* ``objects/<first-two-hex>/<sha256>`` — the payloads themselves
* ``meta/<sha256>.prov``               — sidecar provenance (JSON)
* ``meta/urls.jsonl``                  — URL -> digest index (skips refetches)
* ``failures.log``                     — append-only failure ledger, one JSON
                                          record per line

Byte-identical payloads map to a single object regardless of URL.  Failed
downloads are recorded in the ledger and raised as ``DownloadFailed``;
batch helpers keep going.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .harvest import FullTextLink, PoliteSession, TransportError

__all__ = ["CachePolicy", "DownloadFailed", "DownloadCache", "download_to_cache"]


@dataclass(frozen=True)
class CachePolicy:
    root_dir: Path
    min_request_interval: float = 1.0
    max_retries: int = 3
    backoff_base: float = 0.5

    def __post_init__(self) -> None:
        if self.min_request_interval <= 0:
            raise ValueError("min_request_interval must be positive (politeness is mandatory)")
        object.__setattr__(self, "root_dir", Path(self.root_dir))


class DownloadFailed(Exception):
    def __init__(self, link: FullTextLink, reason: str) -> None:
        super().__init__(f"{link.url}: {reason}")
        self.link = link
        self.reason = reason


def _utc_now() -> str:
    return dt.datetime.now(dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class DownloadCache:
    """Shared-state guard around one cache directory tree."""

    def __init__(
        self,
        policy: CachePolicy,
        session: PoliteSession,
        *,
        now: Callable[[], str] = _utc_now,
    ) -> None:
        self.policy = policy
        self.session = session
        self.now = now
        root = policy.root_dir
        self.objects_dir = root / "objects"
        self.meta_dir = root / "meta"
        self.failures_path = root / "failures.log"
        self.url_index_path = self.meta_dir / "urls.jsonl"
        self.objects_dir.mkdir(parents=True, exist_ok=True)
        self.meta_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._url_index: dict[str, str] = {}
        if self.url_index_path.exists():
            with self.url_index_path.open(encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    entry = json.loads(line)
                    self._url_index[entry["url"]] = entry["digest"]

    def object_path(self, digest: str) -> Path:
        return self.objects_dir / digest[:2] / digest

    def cached_path_for_url(self, url: str) -> Path | None:
        with self._lock:
            digest = self._url_index.get(url)
        if digest is None:
            return None
        path = self.object_path(digest)
        return path if path.exists() else None

    def _record_failure(self, link: FullTextLink, reason: str) -> None:
        entry = {"doi": link.doi, "url": link.url, "error": reason, "at": self.now()}
        with self._lock:
            with self.failures_path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(entry, ensure_ascii=False) + "\n")

    def _index_url(self, url: str, digest: str, doi: str) -> None:
        with self._lock:
            if self._url_index.get(url) == digest:
                return
            self._url_index[url] = digest
            with self.url_index_path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps({"url": url, "digest": digest, "doi": doi}) + "\n")

    def download(self, link: FullTextLink) -> Path:
        """Fetch one link into the cache; returns the stored object's path."""
        cached = self.cached_path_for_url(link.url)
        if cached is not None:
            return cached

        try:
            resp = self.session.get(link.url)
        except TransportError as exc:
            self._record_failure(link, f"transport: {exc}")
            raise DownloadFailed(link, f"transport: {exc}") from exc
        if resp.status != 200:
            reason = f"http-status-{resp.status}"
            self._record_failure(link, reason)
            raise DownloadFailed(link, reason)

        digest = hashlib.sha256(resp.body).hexdigest()
        target = self.object_path(digest)
        target.parent.mkdir(parents=True, exist_ok=True)
        tmp = target.parent / f".{digest}.{os.getpid()}.{threading.get_ident()}.part"
        tmp.write_bytes(resp.body)
        try:
            declared = resp.header("content-length")
            if declared is not None and int(declared) != len(resp.body):
                reason = f"truncated: got {len(resp.body)} of {declared} bytes"
                self._record_failure(link, reason)
                raise DownloadFailed(link, reason)
            if not target.exists():
                os.replace(tmp, target)
        finally:
            if tmp.exists():
                tmp.unlink()

        prov_path = self.meta_dir / f"{digest}.prov"
        if not prov_path.exists():
            prov = {
                "doi": link.doi,
                "url": link.url,
                "fetched_at": self.now(),
                "content_type": link.content_type or resp.header("content-type") or "",
                "bytes": len(resp.body),
            }
            prov_path.write_text(
                json.dumps(prov, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
            )
        self._index_url(link.url, digest, link.doi)
        return target

    def download_many(
        self, links: Sequence[FullTextLink], max_workers: int = 4
    ) -> dict[str, Path | None]:
        """Fetch a batch; failures are ledgered and reported as None.

        Per-host politeness serialization happens inside the session, so
        parallel workers only help across distinct hosts.
        """
        results: dict[str, Path | None] = {}

        def fetch(link: FullTextLink) -> tuple[str, Path | None]:
            try:
                return link.url, self.download(link)
            except DownloadFailed:
                return link.url, None

        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            for url, path in pool.map(fetch, links):
                results[url] = path
        return results

    def failures(self) -> list[dict]:
        if not self.failures_path.exists():
            return []
        entries = []
        with self.failures_path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    entries.append(json.loads(line))
        return entries


def download_to_cache(
    link: FullTextLink, policy: CachePolicy, session: PoliteSession
) -> Path:
    """One-shot convenience wrapper around ``DownloadCache.download``."""
    return DownloadCache(policy, session).download(link)
