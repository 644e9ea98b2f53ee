"""On-disk index layout: manifest.json, documents.jsonl, passages.jsonl,
vocab.json, vectors.jsonl.

Floats are serialized with repr-level precision (17 significant digits), so
a save/load round trip reproduces every weight bit-for-bit and retrieval
results stay byte-identical.
"""

from __future__ import annotations

import datetime
import json
import tempfile
from pathlib import Path
from typing import Sequence, Tuple

import numpy as np

from .corpus import Document, DocumentStore, Passage
from .errors import IntegrityError, VersionMismatchError
from .retriever.model import TfIdfModel

DEFAULT_PROBES = (
    "fever symptoms",
    "vaccine trial outcomes",
    "viral transmission surveillance",
    "antibody study",
    "hospital admissions",
)

FORMAT_VERSION = 1

MANIFEST = "manifest.json"
DOCUMENTS = "documents.jsonl"
PASSAGES = "passages.jsonl"
VOCAB = "vocab.json"
VECTORS = "vectors.jsonl"


def index_exists(index_dir: Path) -> bool:
    return (Path(index_dir) / MANIFEST).exists()


def save_index(index_dir: Path, store: DocumentStore, model: TfIdfModel, force: bool = False) -> None:
    index_dir = Path(index_dir)
    if index_dir.exists() and any(index_dir.iterdir()) and not force:
        raise FileExistsError(f"index directory {index_dir} is not empty (use force to overwrite)")
    index_dir.mkdir(parents=True, exist_ok=True)

    with open(index_dir / DOCUMENTS, "w", encoding="utf-8") as fh:
        for doc in store.documents.values():
            fh.write(json.dumps(
                {"doc_id": doc.doc_id, "text": doc.text, "meta": doc.meta},
                ensure_ascii=False, sort_keys=True,
            ) + "\n")

    with open(index_dir / PASSAGES, "w", encoding="utf-8") as fh:
        for passage in store.iter_passages():
            fh.write(json.dumps(
                {
                    "passage_id": passage.passage_id,
                    "doc_id": passage.doc_id,
                    "index_in_doc": passage.index_in_doc,
                    "char_start": passage.char_start,
                    "char_end": passage.char_end,
                },
                ensure_ascii=False, sort_keys=True,
            ) + "\n")

    terms = {
        term: {"id": term_id, "df": int(model.df[term_id]), "idf": float(model.idf[term_id])}
        for term, term_id in model.vocab.items()
    }
    with open(index_dir / VOCAB, "w", encoding="utf-8") as fh:
        json.dump(
            {"n_passages": model.n_passages, "terms": terms},
            fh, ensure_ascii=False, sort_keys=True,
        )

    with open(index_dir / VECTORS, "w", encoding="utf-8") as fh:
        for passage_id, (term_ids, weights) in zip(model.passage_ids, model.vectors):
            fh.write(json.dumps(
                {
                    "passage_id": passage_id,
                    "weights": [[int(t), float(w)] for t, w in zip(term_ids, weights)],
                },
                ensure_ascii=False, sort_keys=True,
            ) + "\n")

    manifest = {
        "format_version": FORMAT_VERSION,
        "created_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "counts": {
            "documents": len(store.documents),
            "passages": len(store.passages),
            "vocab_terms": len(model.vocab),
            "vectors": len(model.passage_ids),
        },
    }
    with open(index_dir / MANIFEST, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, ensure_ascii=False, sort_keys=True, indent=2)


def _read_jsonl(path: Path):
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)


def load_index(index_dir: Path) -> Tuple[DocumentStore, TfIdfModel]:
    index_dir = Path(index_dir)
    manifest_path = index_dir / MANIFEST
    if not manifest_path.exists():
        raise FileNotFoundError(f"no index manifest at {manifest_path}")
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    found = manifest.get("format_version")
    if found != FORMAT_VERSION:
        raise VersionMismatchError(FORMAT_VERSION, found)
    counts = manifest.get("counts", {})

    documents = {}
    for raw in _read_jsonl(index_dir / DOCUMENTS):
        documents[raw["doc_id"]] = Document(doc_id=raw["doc_id"], text=raw["text"], meta=raw["meta"])
    if len(documents) != counts.get("documents"):
        raise IntegrityError(
            f"documents.jsonl holds {len(documents)} records, manifest says {counts.get('documents')}"
        )

    passages = {}
    doc_passages: dict = {}
    for raw in _read_jsonl(index_dir / PASSAGES):
        doc = documents.get(raw["doc_id"])
        if doc is None:
            raise IntegrityError(f"passage {raw['passage_id']!r} references unknown document")
        passage = Passage(
            passage_id=raw["passage_id"],
            doc_id=raw["doc_id"],
            index_in_doc=raw["index_in_doc"],
            char_start=raw["char_start"],
            char_end=raw["char_end"],
            text=doc.text[raw["char_start"] : raw["char_end"]],
        )
        passages[passage.passage_id] = passage
        doc_passages.setdefault(passage.doc_id, []).append(passage.passage_id)
    if len(passages) != counts.get("passages"):
        raise IntegrityError(
            f"passages.jsonl holds {len(passages)} records, manifest says {counts.get('passages')}"
        )
    store = DocumentStore(
        documents=documents,
        passages=passages,
        doc_passages={doc_id: tuple(pids) for doc_id, pids in doc_passages.items()},
    )

    with open(index_dir / VOCAB, encoding="utf-8") as fh:
        vocab_payload = json.load(fh)
    terms = vocab_payload["terms"]
    if len(terms) != counts.get("vocab_terms"):
        raise IntegrityError(
            f"vocab.json holds {len(terms)} terms, manifest says {counts.get('vocab_terms')}"
        )
    model = TfIdfModel()
    model.n_passages = vocab_payload["n_passages"]
    model.vocab = {term: entry["id"] for term, entry in terms.items()}
    n_terms = len(terms)
    model.df = np.zeros(n_terms, dtype=np.int64)
    model.idf = np.zeros(n_terms, dtype=np.float64)
    for entry in terms.values():
        model.df[entry["id"]] = entry["df"]
        model.idf[entry["id"]] = entry["idf"]

    model.passage_ids = []
    model.vectors = []
    for raw in _read_jsonl(index_dir / VECTORS):
        model.passage_ids.append(raw["passage_id"])
        pairs = raw["weights"]
        model.vectors.append(
            (
                np.asarray([t for t, _ in pairs], dtype=np.int32),
                np.asarray([w for _, w in pairs], dtype=np.float64),
            )
        )
    if len(model.passage_ids) != counts.get("vectors"):
        raise IntegrityError(
            f"vectors.jsonl holds {len(model.passage_ids)} records, manifest says {counts.get('vectors')}"
        )
    model._build_postings()
    model.fitted = True
    return store, model


def snapshot_roundtrip(index_dir: Path, probe_queries: Sequence[str] = DEFAULT_PROBES) -> bool:
    """Verify the persisted index survives save -> load unchanged.

    Loads the index, re-saves it to a scratch directory, reloads, and
    compares serialized retrieval results for the probe queries. Raises
    IntegrityError on any difference; version mismatches propagate.
    """
    from .pipeline import BaselineReaderNode, QueryRequest, RetrieverNode, build_default_pipeline, run

    def probe(store: DocumentStore, model: TfIdfModel) -> str:
        pipeline = build_default_pipeline(RetrieverNode(model, store), BaselineReaderNode(model))
        rows = [
            [r.to_dict() for r in run(pipeline, QueryRequest(query=q, retriever_top_k=5, reader_top_k=3), store=store)]
            for q in probe_queries
        ]
        return json.dumps(rows, ensure_ascii=False, sort_keys=True)

    store, model = load_index(index_dir)
    before = probe(store, model)
    with tempfile.TemporaryDirectory() as scratch:
        save_index(Path(scratch) / "copy", store, model)
        re_store, re_model = load_index(Path(scratch) / "copy")
    after = probe(re_store, re_model)
    if before != after:
        raise IntegrityError("probe queries differ after save/load round trip")
    return True
