"""CSV ingestion of publication records and offset-safe text cleaning."""

from __future__ import annotations

import csv
import datetime
import io
import json
import unicodedata
from dataclasses import dataclass, field
from typing import BinaryIO, Dict, List, Optional, Tuple

from ..errors import CsvParseError, DuplicateKeyError

# canonical column keys -> default CSV header names
DEFAULT_SCHEMA: Dict[str, str] = {
    "pmid": "PMID",
    "title": "title",
    "paragraphs": "paragraphs",
    "url": "URL",
    "publication_date": "publication date",
    "authors": "authors",
}


@dataclass(frozen=True)
class RawArticle:
    pmid: str
    title: str = ""
    paragraphs: Tuple[str, ...] = ()
    url: str = ""
    publication_date: str = ""
    authors: Tuple[str, ...] = ()
    full_text: str = ""
    source: str = ""

    def text(self) -> str:
        if self.full_text:
            return self.full_text
        return "\n\n".join(self.paragraphs)

    def check(self) -> None:
        if not self.pmid:
            raise ValueError("article has empty pmid")
        if not self.text():
            raise ValueError(f"article {self.pmid!r} has no text")


@dataclass
class IngestResult:
    articles: List[RawArticle]
    skipped: List[Tuple[int, str]] = field(default_factory=list)  # (row number, reason)


def clean_text(raw: str) -> str:
    """NFC-normalize, drop non-whitespace control/format characters, collapse
    whitespace runs to single spaces, trim.

    Never deletes printable characters: stored text must keep answers as
    exact substrings.
    """
    normalized = unicodedata.normalize("NFC", raw)
    kept = [
        ch
        for ch in normalized
        if ch.isspace() or unicodedata.category(ch) not in ("Cc", "Cf")
    ]
    return " ".join("".join(kept).split())


def _parse_paragraphs(cell: str) -> Tuple[str, ...]:
    """A paragraphs cell is either a JSON-encoded array of strings or one
    text blob."""
    stripped = cell.strip()
    if stripped.startswith("["):
        try:
            decoded = json.loads(stripped)
        except json.JSONDecodeError:
            decoded = None
        if isinstance(decoded, list) and all(isinstance(p, str) for p in decoded):
            return tuple(p for p in decoded if p.strip())
    return (cell,) if stripped else ()


def _parse_authors(cell: str) -> Tuple[str, ...]:
    stripped = cell.strip()
    if stripped.startswith("["):
        try:
            decoded = json.loads(stripped)
        except json.JSONDecodeError:
            decoded = None
        if isinstance(decoded, list) and all(isinstance(a, str) for a in decoded):
            return tuple(a.strip() for a in decoded if a.strip())
    return tuple(a.strip() for a in stripped.split(";") if a.strip())


def ingest_csv(
    source: BinaryIO,
    schema: Optional[Dict[str, str]] = None,
    source_name: str = "",
) -> IngestResult:
    """Read publication records from a UTF-8 CSV with a header row.

    Rows lacking a pmid or any text column are reported in the result's
    skipped list rather than silently dropped. Duplicate pmids within the
    batch raise DuplicateKeyError naming every offender.
    """
    schema = dict(DEFAULT_SCHEMA, **(schema or {}))
    text_stream = io.TextIOWrapper(source, encoding="utf-8-sig", newline="")
    reader = csv.DictReader(text_stream)
    try:
        headers = reader.fieldnames
    except csv.Error as exc:
        raise CsvParseError(str(exc), row=1) from exc
    except UnicodeDecodeError as exc:
        raise CsvParseError(f"not valid UTF-8: {exc.reason}", row=1) from exc
    if not headers:
        raise CsvParseError("missing header row", row=1)

    missing = [name for name in (schema["pmid"],) if name not in headers]
    if missing:
        raise CsvParseError(f"header lacks required column(s): {', '.join(missing)}", row=1)

    def cell(row: Dict[str, str], key: str) -> str:
        value = row.get(schema[key])
        return value if value is not None else ""

    articles: List[RawArticle] = []
    skipped: List[Tuple[int, str]] = []
    seen: Dict[str, int] = {}
    duplicates = set()
    try:
        for row in reader:
            row_num = reader.line_num
            pmid = cell(row, "pmid").strip()
            paragraphs = _parse_paragraphs(cell(row, "paragraphs"))
            if not pmid:
                skipped.append((row_num, "missing pmid"))
                continue
            if not paragraphs:
                skipped.append((row_num, f"pmid {pmid!r}: no text columns"))
                continue
            if pmid in seen:
                duplicates.add(pmid)
                continue
            seen[pmid] = row_num
            articles.append(
                RawArticle(
                    pmid=pmid,
                    title=cell(row, "title").strip(),
                    paragraphs=paragraphs,
                    url=cell(row, "url").strip(),
                    publication_date=cell(row, "publication_date").strip(),
                    authors=_parse_authors(cell(row, "authors")),
                    source=source_name,
                )
            )
    except csv.Error as exc:
        raise CsvParseError(str(exc), row=reader.line_num) from exc
    except UnicodeDecodeError as exc:
        raise CsvParseError(f"not valid UTF-8: {exc.reason}", row=reader.line_num) from exc

    if duplicates:
        raise DuplicateKeyError(duplicates)
    return IngestResult(articles=articles, skipped=skipped)


@dataclass(frozen=True)
class ArticleFilter:
    """Configurable ingestion-time predicates (date window)."""

    date_from: Optional[datetime.date] = None
    date_to: Optional[datetime.date] = None

    def keep(self, article: RawArticle) -> bool:
        if self.date_from is None and self.date_to is None:
            return True
        try:
            published = datetime.date.fromisoformat(article.publication_date[:10])
        except ValueError:
            return False
        if self.date_from is not None and published < self.date_from:
            return False
        if self.date_to is not None and published > self.date_to:
            return False
        return True

    def apply(self, articles: List[RawArticle]) -> List[RawArticle]:
        return [a for a in articles if self.keep(a)]
