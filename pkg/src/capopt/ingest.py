"""OpenReview submission fetching and the on-disk instance format.

Fetching is a polite paginated client for the public note listings
(API v1 and v2); every downstream computation consumes snapshot files
written in the canonical format below, never the live service.

Canonical instance file (UTF-8 text, ``.gz`` accepted transparently)::

    capopt-instance 1 <m>
    <paper id> TAB <author label> [<author label> ...]   (m lines)

Paper lines appear in submission order.  Labels are OpenReview profile
ids when available, lowercased e-mail addresses otherwise.
"""

from __future__ import annotations

import gzip
import io
import logging
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import requests

from .model import AuthorshipInstance, build_instance

logger = logging.getLogger(__name__)

MAGIC = "capopt-instance"
FORMAT_VERSION = 1

ENV_BASE_URL = "CAPOPT_OPENREVIEW_URL"
DEFAULT_BASE_URLS = {"v1": "https://api.openreview.net", "v2": "https://api2.openreview.net"}


class UnsupportedYearError(ValueError):
    """No public submission records exist for the requested year."""


class HttpError(RuntimeError):
    def __init__(self, status: int, message: str = ""):
        super().__init__(f"HTTP {status}: {message}" if message else f"HTTP {status}")
        self.status = status


class PaginationStallError(RuntimeError):
    """The listing stopped advancing before all records were returned."""


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class RawSubmission:
    external_id: str
    submission_ordinal: int
    author_labels: tuple[str, ...]
    year: int


def invitation_for(year: int) -> tuple[str, str]:
    """API version and invitation string listing the year's submissions."""
    if year in (2013, 2014):
        return "v1", f"ICLR.cc/{year}/conference/-/submission"
    if 2017 <= year <= 2023:
        return "v1", f"ICLR.cc/{year}/Conference/-/Blind_Submission"
    if year in (2024, 2025):
        return "v2", f"ICLR.cc/{year}/Conference/-/Submission"
    raise UnsupportedYearError(f"no public submission records for {year}")


def _author_ids(note: dict, api_version: str) -> list[str]:
    content = note.get("content") or {}
    raw = content.get("authorids")
    if api_version == "v2" and isinstance(raw, dict):
        raw = raw.get("value")
    if not isinstance(raw, list):
        return []
    return [str(v) for v in raw if isinstance(v, str) and v.strip()]


def fetch_year(
    year: int,
    api_version: str | None = None,
    base_url: str | None = None,
    page_size: int = 1000,
    *,
    min_interval: float = 0.2,
    backoff_base: float = 1.0,
    max_retries: int = 6,
    session: requests.Session | None = None,
) -> list[RawSubmission]:
    """Fetch every submission note of a year, in submission-number order.

    Pages are requested at least ``min_interval`` seconds apart and 429
    responses back off exponentially.  Notes without any author id are
    dropped (their count is logged), mirroring the small gaps in the
    public listings.
    """
    api, invitation = invitation_for(year)
    if api_version is not None:
        api = api_version
    base = base_url or os.environ.get(ENV_BASE_URL) or DEFAULT_BASE_URLS[api]
    http = session or requests.Session()

    notes: list[dict] = []
    offset = 0
    first_request = True
    while True:
        if not first_request and min_interval > 0:
            time.sleep(min_interval)
        first_request = False
        page = _get_page(
            http,
            f"{base.rstrip('/')}/notes",
            {"invitation": invitation, "limit": page_size, "offset": offset},
            backoff_base=backoff_base,
            max_retries=max_retries,
        )
        batch = page.get("notes") or []
        total = page.get("count")
        if not batch:
            if total is not None and offset < int(total):
                raise PaginationStallError(
                    f"empty page at offset {offset} with {total} records advertised"
                )
            break
        notes.extend(batch)
        offset += len(batch)
        if total is not None and offset >= int(total):
            break

    dropped = 0
    raws: list[tuple[object, str, tuple[str, ...]]] = []
    for pos, note in enumerate(notes):
        labels = tuple(_author_ids(note, api))
        if not labels:
            dropped += 1
            continue
        number = note.get("number")
        sort_key = (0, int(number), pos) if isinstance(number, int) else (1, 0, pos)
        raws.append((sort_key, str(note.get("id", f"note-{pos}")), labels))
    if dropped:
        logger.warning("dropped %d submission(s) with no author ids for %d", dropped, year)

    raws.sort(key=lambda item: item[0])
    return [
        RawSubmission(external_id=ext, submission_ordinal=k + 1, author_labels=labels, year=year)
        for k, (_, ext, labels) in enumerate(raws)
    ]


def _get_page(http, url, params, *, backoff_base, max_retries):
    delay = backoff_base
    for attempt in range(max_retries + 1):
        response = http.get(url, params=params, timeout=60)
        if response.status_code == 429 and attempt < max_retries:
            if delay > 0:
                time.sleep(delay)
            delay = delay * 2 if delay > 0 else 0
            continue
        if response.status_code != 200:
            raise HttpError(response.status_code, response.text[:200])
        return response.json()
    raise HttpError(429, "rate limited after retries")


def normalize(raws: Iterable[RawSubmission]) -> list[tuple[str, tuple[str, ...]]]:
    """Per-paper author labels in submission order, deduplicated.

    Profile ids (``~...``) are kept verbatim; anything else is treated
    as an e-mail and lowercased.  Papers left with no usable label are
    dropped and counted.
    """
    dropped = 0
    records = []
    for raw in sorted(raws, key=lambda r: r.submission_ordinal):
        labels = []
        for label in raw.author_labels:
            label = label.strip()
            if not label:
                continue
            labels.append(label if label.startswith("~") else label.lower())
        labels = tuple(dict.fromkeys(labels))
        if not labels:
            dropped += 1
            continue
        records.append((raw.external_id, labels))
    if dropped:
        logger.warning("normalize dropped %d paper(s) without author labels", dropped)
    return records


def _as_records(papers) -> list[tuple[str, tuple[str, ...]]]:
    records = []
    for pos, entry in enumerate(papers):
        if isinstance(entry, tuple) and len(entry) == 2 and not isinstance(entry[0], list):
            paper_id, labels = entry
        else:
            paper_id, labels = str(pos + 1), entry
        records.append((str(paper_id), tuple(dict.fromkeys(labels))))
    return records


def write_instance(path, papers) -> None:
    """Write papers (label lists, or (id, labels) records) canonically."""
    records = _as_records(papers)
    if not records:
        raise ValueError("an instance file must contain at least one paper")
    for paper_id, labels in records:
        if "\t" in paper_id or "\n" in paper_id or not paper_id:
            raise ValueError(f"invalid paper id {paper_id!r}")
        if not labels:
            raise ValueError(f"paper {paper_id!r} has no authors")
        for label in labels:
            if not label or any(ch.isspace() for ch in label):
                raise ValueError(f"invalid author label {label!r}")
    lines = [f"{MAGIC} {FORMAT_VERSION} {len(records)}\n"]
    lines.extend(f"{paper_id}\t{' '.join(labels)}\n" for paper_id, labels in records)
    data = "".join(lines).encode("utf-8")
    path = Path(path)
    if path.suffix == ".gz":
        # mtime pinned and no embedded name, so identical content gives
        # identical bytes
        buf = io.BytesIO()
        with gzip.GzipFile(fileobj=buf, mode="wb", mtime=0) as gz:
            gz.write(data)
        data = buf.getvalue()
    path.write_bytes(data)


def read_instance(path) -> list[tuple[str, tuple[str, ...]]]:
    """Parse a canonical instance file into (paper id, labels) records."""
    data = Path(path).read_bytes()
    if Path(path).suffix == ".gz":
        data = gzip.decompress(data)
    with io.StringIO(data.decode("utf-8")) as fh:
        header = fh.readline()
        if not header:
            raise ParseError(1, "empty file")
        parts = header.split()
        if len(parts) != 3 or parts[0] != MAGIC:
            raise ParseError(1, f"expected '{MAGIC} <version> <papers>' header")
        if parts[1] != str(FORMAT_VERSION):
            raise ParseError(1, f"unsupported format version {parts[1]}")
        try:
            m = int(parts[2])
        except ValueError:
            raise ParseError(1, f"bad paper count {parts[2]!r}") from None
        if m <= 0:
            raise ParseError(1, "an instance must contain at least one paper")
        records = []
        for lineno in range(2, m + 2):
            line = fh.readline()
            if not line:
                raise ParseError(lineno, f"expected {m} paper lines, found {lineno - 2}")
            line = line.rstrip("\n")
            paper_id, sep, label_part = line.partition("\t")
            if not sep or not paper_id:
                raise ParseError(lineno, "expected '<paper id>\\t<labels>'")
            labels = tuple(tok for tok in label_part.split(" ") if tok)
            if not labels:
                raise ParseError(lineno, "paper has no author labels")
            records.append((paper_id, labels))
        if fh.readline():
            raise ParseError(m + 2, f"trailing content after {m} paper lines")
    return records


def load_instance(path) -> AuthorshipInstance:
    """Read a canonical instance file and build the incidence structure."""
    records = read_instance(path)
    return build_instance(
        [list(labels) for _, labels in records],
        paper_labels=[paper_id for paper_id, _ in records],
    )
