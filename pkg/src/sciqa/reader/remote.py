"""HTTP client for an external reader speaking the /read wire protocol.

Request:  POST {query, top_k, passages: [{passage_id, text, meta}]}
Response: {answers: [{passage_id, start, end, text, score}]}

Offsets are Unicode-scalar, half-open, relative to the sent passage text.
Every response answer is validated locally before use; document offsets are
always recomputed from the passage's own position.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import httpx

from ..corpus import Passage
from ..errors import EmptyInputError, ProtocolViolationError, RemoteUnavailableError
from .baseline import NO_ANSWER, Answer, ReaderConfig

DEFAULT_TIMEOUT = 10.0


def build_read_request(
    query: str, passages: Sequence[Tuple[Passage, Dict[str, object]]], top_k: int
) -> dict:
    return {
        "query": query,
        "top_k": top_k,
        "passages": [
            {"passage_id": p.passage_id, "text": p.text, "meta": dict(meta)}
            for p, meta in passages
        ],
    }


def _validated_answer(
    index: int,
    payload: dict,
    by_id: Dict[str, Tuple[Passage, Dict[str, object]]],
) -> Answer:
    for key in ("passage_id", "start", "end", "text", "score"):
        if key not in payload:
            raise ProtocolViolationError(f"missing field {key!r}", answer_index=index)
    passage_id = payload["passage_id"]
    if passage_id not in by_id:
        raise ProtocolViolationError(f"unknown passage_id {passage_id!r}", answer_index=index)
    passage, meta = by_id[passage_id]
    start, end = payload["start"], payload["end"]
    if not (isinstance(start, int) and isinstance(end, int)):
        raise ProtocolViolationError("offsets must be integers", answer_index=index)
    if not 0 <= start <= end <= len(passage.text):
        raise ProtocolViolationError(
            f"offsets ({start}, {end}) out of range for passage of length {len(passage.text)}",
            answer_index=index,
        )
    if passage.text[start:end] != payload["text"]:
        raise ProtocolViolationError(
            "answer text does not equal the passage slice at its offsets",
            answer_index=index,
        )
    score = payload["score"]
    if not isinstance(score, (int, float)) or not 0.0 <= float(score) <= 1.0:
        raise ProtocolViolationError(f"score {score!r} outside [0, 1]", answer_index=index)
    return Answer(
        answer=payload["text"],
        type="extractive",
        score=float(score),
        context=passage.text,
        meta=dict(meta),
        offsets_in_document=(passage.char_start + start, passage.char_start + end),
        offsets_in_context=(start, end),
        doc_id=passage.doc_id,
        passage_id=passage.passage_id,
    )


def remote_read(
    endpoint: str,
    query: str,
    passages: Sequence[Tuple[Passage, Dict[str, object]]],
    top_k: int,
    cfg: ReaderConfig = ReaderConfig(),
    timeout: float = DEFAULT_TIMEOUT,
    client: httpx.Client | None = None,
) -> List[Answer]:
    """Ask a remote reader for answers, validating each one against the
    passages actually sent."""
    if not passages:
        raise EmptyInputError("no passages to read")
    if top_k < 1:
        raise ValueError(f"top_k must be >= 1, got {top_k}")

    request = build_read_request(query, passages, top_k)
    try:
        if client is None:
            response = httpx.post(endpoint, json=request, timeout=timeout)
        else:
            response = client.post(endpoint, json=request, timeout=timeout)
        response.raise_for_status()
        payload = response.json()
    except httpx.HTTPError as exc:
        raise RemoteUnavailableError(f"reader at {endpoint}: {exc}") from exc

    raw_answers = payload.get("answers")
    if not isinstance(raw_answers, list):
        raise ProtocolViolationError("response lacks an 'answers' list")
    if not raw_answers:
        return [NO_ANSWER]

    by_id = {p.passage_id: (p, meta) for p, meta in passages}
    answers = [_validated_answer(i, a, by_id) for i, a in enumerate(raw_answers)]
    answers.sort(key=lambda a: -a.score)
    return answers[:top_k]
