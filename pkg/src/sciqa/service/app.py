"""HTTP service over a loaded index snapshot.

All endpoints are read-only; /query responses are serialized with a fixed
field order so identical requests against identical snapshots produce
byte-identical bodies.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .. import _kernels
from ..corpus import DocumentStore
from ..errors import SciqaError
from ..pipeline import (
    BaselineReaderNode,
    Pipeline,
    QueryRequest,
    RemoteReaderNode,
    RetrieverNode,
    build_default_pipeline,
    run,
)
from ..reader import ReaderConfig
from ..retriever.model import TfIdfModel


@dataclass
class ServiceConfig:
    index_dir: Optional[Path] = None
    listen_host: str = "127.0.0.1"
    listen_port: int = 8000
    retriever_top_k_default: int = 10
    reader_top_k_default: int = 5
    reader_mode: str = "baseline"  # "baseline" | "remote"
    remote_reader_url: Optional[str] = None
    remote_scorer_url: Optional[str] = None
    remote_timeout: float = 10.0

    def __post_init__(self) -> None:
        if self.reader_mode not in ("baseline", "remote"):
            raise ValueError(f"unknown reader_mode {self.reader_mode!r}")
        if self.reader_mode == "remote" and not self.remote_reader_url:
            raise ValueError("reader_mode 'remote' requires remote_reader_url")


class QueryBody(BaseModel):
    query: str
    retriever_top_k: Optional[int] = None
    reader_top_k: Optional[int] = None


def build_pipeline(store: DocumentStore, model: TfIdfModel, config: ServiceConfig) -> Pipeline:
    retriever = RetrieverNode(model, store)
    if config.reader_mode == "remote":
        reader = RemoteReaderNode(config.remote_reader_url, ReaderConfig(), timeout=config.remote_timeout)
    else:
        reader = BaselineReaderNode(model, ReaderConfig())
    return build_default_pipeline(retriever, reader)


def _canonical_json(payload) -> Response:
    body = json.dumps(payload, ensure_ascii=False, separators=(",", ":"))
    return Response(content=body.encode("utf-8"), media_type="application/json")


def create_app(store: DocumentStore, model: TfIdfModel, config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig()
    pipeline = build_pipeline(store, model, config)
    pipeline.validate()

    app = FastAPI(title="sciqa", docs_url=None, redoc_url=None)

    @app.get("/health")
    def health():
        return _canonical_json(
            {"status": "ok", "documents": len(store.documents), "passages": len(store.passages)}
        )

    @app.get("/stats")
    def stats():
        return _canonical_json(
            {
                "documents": len(store.documents),
                "passages": len(store.passages),
                "vocab_terms": len(model.vocab),
                "kernel_backend": _kernels.BACKEND,
            }
        )

    @app.get("/documents/{doc_id}")
    def document(doc_id: str):
        doc = store.documents.get(doc_id)
        if doc is None:
            return JSONResponse(status_code=404, content={"error": f"unknown doc_id {doc_id!r}"})
        return _canonical_json({"doc_id": doc.doc_id, "text": doc.text, "meta": doc.meta})

    @app.post("/query")
    def query(body: QueryBody):
        try:
            request = QueryRequest(
                query=body.query,
                retriever_top_k=body.retriever_top_k or config.retriever_top_k_default,
                reader_top_k=body.reader_top_k or config.reader_top_k_default,
            )
            rows = run(pipeline, request, store=store)
        except ValueError as exc:
            return JSONResponse(status_code=400, content={"error": str(exc)})
        except SciqaError as exc:
            return JSONResponse(status_code=502, content={"error": str(exc)})
        return _canonical_json({"answers": [row.to_dict() for row in rows]})

    return app
