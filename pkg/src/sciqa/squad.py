"""SQuAD 2.0 dataset tooling: parsing, validation, canonical serialization,
seeded splitting, and relevance-judgment derivation.

Both the nested layout (data -> paragraphs -> qas) and a flat per-example
layout are accepted on input; the canonical output form is flat with sorted
keys, so serialize(parse(serialize(d))) is byte-identical.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from .corpus import DocumentStore
from .errors import (
    AmbiguousContextError,
    DatasetFieldError,
    DatasetParseError,
    DatasetTooSmallError,
    InvalidDatasetError,
)

Qrels = Dict[str, Set[str]]


@dataclass(frozen=True)
class SquadAnswer:
    text: str
    answer_start: int


@dataclass(frozen=True)
class SquadExample:
    id: str
    question: str
    context: str
    answers: Tuple[SquadAnswer, ...]
    is_impossible: bool = False
    document_id: Optional[str] = None


@dataclass
class SquadDataset:
    version: str
    examples: List[SquadExample]
    provenance: Dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class Violation:
    example_id: str
    reason: str


def _require(mapping: dict, key: str, where: str):
    if key not in mapping:
        raise DatasetFieldError(key, where)
    return mapping[key]


def _parse_answers(raw, where: str) -> Tuple[SquadAnswer, ...]:
    if not isinstance(raw, list):
        raise DatasetFieldError("answers", where)
    answers = []
    for i, entry in enumerate(raw):
        answers.append(
            SquadAnswer(
                text=str(_require(entry, "text", f"{where}.answers[{i}]")),
                answer_start=int(_require(entry, "answer_start", f"{where}.answers[{i}]")),
            )
        )
    return tuple(answers)


def _example_from_flat(raw: dict, where: str) -> SquadExample:
    return SquadExample(
        id=str(_require(raw, "id", where)),
        question=str(_require(raw, "question", where)),
        context=str(_require(raw, "context", where)),
        answers=_parse_answers(raw.get("answers", []), where),
        is_impossible=bool(raw.get("is_impossible", False)),
        document_id=raw.get("document_id"),
    )


def parse(data: bytes | str) -> SquadDataset:
    """Load a dataset from nested or flat SQuAD 2.0 JSON."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DatasetParseError(f"malformed JSON: {exc.msg}", path=f"line {exc.lineno}") from exc
    if not isinstance(payload, dict):
        raise DatasetParseError("top level must be a JSON object", path="$")

    version = str(payload.get("version", ""))
    provenance = dict(payload.get("provenance", {}))
    examples: List[SquadExample] = []

    if "examples" in payload:
        for i, raw in enumerate(payload["examples"]):
            examples.append(_example_from_flat(raw, f"examples[{i}]"))
    elif "data" in payload:
        for a, article in enumerate(payload["data"]):
            for p, paragraph in enumerate(article.get("paragraphs", [])):
                where = f"data[{a}].paragraphs[{p}]"
                context = str(_require(paragraph, "context", where))
                doc_id = paragraph.get("document_id") or article.get("document_id")
                for q, qa in enumerate(paragraph.get("qas", [])):
                    qa_where = f"{where}.qas[{q}]"
                    examples.append(
                        SquadExample(
                            id=str(_require(qa, "id", qa_where)),
                            question=str(_require(qa, "question", qa_where)),
                            context=context,
                            answers=_parse_answers(qa.get("answers", []), qa_where),
                            is_impossible=bool(qa.get("is_impossible", False)),
                            document_id=qa.get("document_id", doc_id),
                        )
                    )
    else:
        raise DatasetParseError("expected an 'examples' or 'data' key", path="$")

    return SquadDataset(version=version, examples=examples, provenance=provenance)


def validate(dataset: SquadDataset) -> List[Violation]:
    """Every invariant violation, with example id and reason; an empty report
    means the dataset is valid."""
    violations: List[Violation] = []
    seen_ids: Set[str] = set()
    for ex in dataset.examples:
        if ex.id in seen_ids:
            violations.append(Violation(ex.id, "duplicate example id"))
        seen_ids.add(ex.id)
        if not ex.question:
            violations.append(Violation(ex.id, "empty question"))
        if ex.is_impossible:
            if ex.answers:
                violations.append(Violation(ex.id, "impossible example carries answers"))
            continue
        if not ex.answers:
            violations.append(Violation(ex.id, "answerable example has no answers"))
        for answer in ex.answers:
            end = answer.answer_start + len(answer.text)
            if answer.answer_start < 0 or end > len(ex.context):
                violations.append(Violation(ex.id, "answer offsets out of context range"))
            elif ex.context[answer.answer_start : end] != answer.text:
                violations.append(Violation(ex.id, f"answer text mismatch at id {ex.id}"))
    return violations


def _example_to_dict(ex: SquadExample) -> dict:
    out = {
        "id": ex.id,
        "question": ex.question,
        "context": ex.context,
        "answers": [{"text": a.text, "answer_start": a.answer_start} for a in ex.answers],
        "is_impossible": ex.is_impossible,
    }
    if ex.document_id is not None:
        out["document_id"] = ex.document_id
    return out


def serialize(dataset: SquadDataset) -> bytes:
    """Canonical flat encoding (sorted keys, compact separators, UTF-8)."""
    violations = validate(dataset)
    if violations:
        first = violations[0]
        raise InvalidDatasetError(f"{first.example_id}: {first.reason}")
    payload = {
        "version": dataset.version,
        "provenance": dataset.provenance,
        "examples": [_example_to_dict(ex) for ex in dataset.examples],
    }
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


DEFAULT_RATIOS = (0.70, 0.15, 0.15)


def split(
    dataset: SquadDataset,
    ratios: Tuple[float, float, float] = DEFAULT_RATIOS,
    seed: int = 0,
) -> Tuple[SquadDataset, SquadDataset, SquadDataset]:
    """Deterministic seeded partition into train/val/test.

    Ratios are normalized to sum to one; sizes are floor(n*r_train) and
    floor(n*r_val), with the remainder going to test.
    """
    if any(r <= 0 for r in ratios):
        raise ValueError("ratios must be positive")
    n = len(dataset.examples)
    if n < 3:
        raise DatasetTooSmallError(f"need at least 3 examples to split, got {n}")
    total = sum(ratios)
    r_train, r_val = ratios[0] / total, ratios[1] / total
    n_train = int(n * r_train)
    n_val = int(n * r_val)

    shuffled = list(dataset.examples)
    random.Random(seed).shuffle(shuffled)

    def part(examples: List[SquadExample], name: str) -> SquadDataset:
        return SquadDataset(
            version=dataset.version,
            examples=examples,
            provenance={**dataset.provenance, "split": name},
        )

    return (
        part(shuffled[:n_train], "train"),
        part(shuffled[n_train : n_train + n_val], "val"),
        part(shuffled[n_train + n_val :], "test"),
    )


def to_qrels(dataset: SquadDataset, store: DocumentStore) -> Qrels:
    """One relevant document per question: the linked document_id, or the
    unique stored document containing the example's context verbatim."""
    qrels: Qrels = {}
    unresolved: List[str] = []
    for ex in dataset.examples:
        if ex.document_id is not None:
            if ex.document_id in store.documents:
                qrels[ex.id] = {ex.document_id}
            else:
                unresolved.append(ex.id)
            continue
        matches = [doc_id for doc_id, doc in store.documents.items() if ex.context in doc.text]
        if len(matches) == 1:
            qrels[ex.id] = {matches[0]}
        else:
            unresolved.append(ex.id)
    if unresolved:
        raise AmbiguousContextError(unresolved)
    return qrels
