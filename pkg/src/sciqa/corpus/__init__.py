from .ingest import ArticleFilter, IngestResult, RawArticle, clean_text, ingest_csv
from .store import (
    Document,
    DocumentStore,
    Passage,
    SplitConfig,
    add_documents,
    get_document,
    split_passages,
)

__all__ = [
    "ArticleFilter",
    "Document",
    "DocumentStore",
    "IngestResult",
    "Passage",
    "RawArticle",
    "SplitConfig",
    "add_documents",
    "clean_text",
    "get_document",
    "ingest_csv",
    "split_passages",
]
