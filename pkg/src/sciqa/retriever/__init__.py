from .model import TfIdfModel, fit, transform
from .search import RetrievedDocument, retrieve_documents, retrieve_passages

__all__ = [
    "RetrievedDocument",
    "TfIdfModel",
    "fit",
    "retrieve_documents",
    "retrieve_passages",
    "transform",
]
