"""Documents, token-window passages, and the immutable document store."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from ..errors import DocumentNotFoundError, DuplicateKeyError, EmptyDocumentError
from ..text import tokenize
from .ingest import RawArticle, clean_text


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str
    meta: Dict[str, object]


@dataclass(frozen=True)
class Passage:
    passage_id: str
    doc_id: str
    index_in_doc: int
    char_start: int
    char_end: int
    text: str


@dataclass(frozen=True)
class SplitConfig:
    max_tokens: int = 512
    stride: Optional[int] = None  # None means max_tokens (non-overlapping)

    def effective_stride(self) -> int:
        return self.max_tokens if self.stride is None else self.stride

    def check(self) -> None:
        if self.max_tokens < 1:
            raise ValueError(f"max_tokens must be >= 1, got {self.max_tokens}")
        stride = self.effective_stride()
        if not 1 <= stride <= self.max_tokens:
            raise ValueError(f"stride must be in [1, max_tokens], got {stride}")


def split_passages(doc: Document, max_tokens: int = 512, stride: Optional[int] = None) -> List[Passage]:
    """Split a document into consecutive token windows with char offsets.

    With the default stride (== max_tokens) the passages' character ranges
    tile [0, len(text)) exactly; with an overlapping stride each passage
    covers its own tokens' character extent.
    """
    cfg = SplitConfig(max_tokens=max_tokens, stride=stride)
    cfg.check()
    if not doc.text:
        raise EmptyDocumentError(f"document {doc.doc_id!r} has empty text")
    tokens = tokenize(doc.text)
    if not tokens:
        raise EmptyDocumentError(f"document {doc.doc_id!r} has no indexable tokens")

    step = cfg.effective_stride()
    tiling = step == cfg.max_tokens
    starts = []
    pos = 0
    while True:
        starts.append(pos)
        if pos + cfg.max_tokens >= len(tokens):
            break
        pos += step

    passages = []
    for k, tok_start in enumerate(starts):
        window = tokens[tok_start : tok_start + cfg.max_tokens]
        if tiling:
            char_start = 0 if k == 0 else tokens[starts[k]].char_start
            char_end = len(doc.text) if k == len(starts) - 1 else tokens[starts[k + 1]].char_start
        else:
            char_start = window[0].char_start
            char_end = window[-1].char_end
        passages.append(
            Passage(
                passage_id=f"{doc.doc_id}#{k}",
                doc_id=doc.doc_id,
                index_in_doc=k,
                char_start=char_start,
                char_end=char_end,
                text=doc.text[char_start:char_end],
            )
        )
    return passages


@dataclass(frozen=True)
class DocumentStore:
    """Immutable snapshot of documents and their passages.

    Updates go through add_documents, which returns a new snapshot; a
    published store is safe for unrestricted concurrent reads.
    """

    documents: Dict[str, Document] = field(default_factory=dict)
    passages: Dict[str, Passage] = field(default_factory=dict)
    doc_passages: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.documents)

    def iter_passages(self) -> Iterator[Passage]:
        for doc_id in self.documents:
            for pid in self.doc_passages[doc_id]:
                yield self.passages[pid]

    def get_passage(self, passage_id: str) -> Passage:
        try:
            return self.passages[passage_id]
        except KeyError:
            raise DocumentNotFoundError(f"unknown passage_id {passage_id!r}") from None


def get_document(store: DocumentStore, doc_id: str) -> Document:
    try:
        return store.documents[doc_id]
    except KeyError:
        raise DocumentNotFoundError(f"unknown doc_id {doc_id!r}") from None


def add_documents(
    store: DocumentStore,
    articles: Iterable[RawArticle],
    split_config: Optional[SplitConfig] = None,
) -> DocumentStore:
    """Add one document (doc_id = pmid) plus passages per article.

    All-or-nothing: any failure leaves the input store untouched and no new
    snapshot is produced.
    """
    cfg = split_config or SplitConfig()
    cfg.check()

    new_docs: Dict[str, Document] = {}
    new_passages: Dict[str, Passage] = {}
    new_doc_passages: Dict[str, Tuple[str, ...]] = {}
    duplicates = set()
    for article in articles:
        article.check()
        doc_id = article.pmid
        if doc_id in store.documents or doc_id in new_docs:
            duplicates.add(doc_id)
            continue
        text = clean_text(article.text())
        if not text:
            raise EmptyDocumentError(f"article {doc_id!r} is empty after cleaning")
        doc = Document(
            doc_id=doc_id,
            text=text,
            meta={
                "name": article.title,
                "url": article.url,
                "publication_date": article.publication_date,
                "authors": list(article.authors),
                "source": article.source,
            },
        )
        passages = split_passages(doc, cfg.max_tokens, cfg.stride)
        new_docs[doc_id] = doc
        for p in passages:
            new_passages[p.passage_id] = p
        new_doc_passages[doc_id] = tuple(p.passage_id for p in passages)

    if duplicates:
        raise DuplicateKeyError(duplicates)

    return DocumentStore(
        documents={**store.documents, **new_docs},
        passages={**store.passages, **new_passages},
        doc_passages={**store.doc_passages, **new_doc_passages},
    )
