import httpx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_store
from sciqa.errors import AlignmentError, RemoteUnavailableError, UndefinedMetricError
from sciqa.evaluation import (
    ReaderEval,
    RemoteScorer,
    RetrieverEval,
    TokenF1Scorer,
    answer_accuracy,
    evaluate,
    exact_match,
    mrr_at_k,
    precision_at_k,
    recall_at_k,
    render_table,
    report_dict,
    sas,
    token_f1,
)
from sciqa.pipeline import BaselineReaderNode, RetrieverNode, build_default_pipeline
from sciqa.reader import Answer
from sciqa.retriever import fit
from sciqa.squad import SquadAnswer, SquadDataset, SquadExample


def make_answer(text, kind="extractive"):
    return Answer(
        answer=text, type=kind, score=0.5, context=text, meta={},
        offsets_in_document=(0, len(text)), offsets_in_context=(0, len(text)),
        doc_id="D", passage_id="D#0",
    )


# --- precision / recall ------------------------------------------------------


def test_precision_at_k_hand_value():
    assert precision_at_k(["d1", "d5", "d2"], {"d1", "d2"}, 3) == pytest.approx(2 / 3)


def test_precision_empty_relevant_is_zero():
    assert precision_at_k(["d1", "d2"], set(), 2) == 0.0


def test_precision_all_relevant():
    assert precision_at_k(["d1", "d2"], {"d1", "d2"}, 2) == 1.0


def test_precision_divides_by_k_with_fewer_results():
    assert precision_at_k(["d1"], {"d1"}, 4) == 0.25


def test_recall_at_k_hand_values():
    assert recall_at_k(["d1", "d5", "d2"], {"d1", "d2"}, 3) == 1.0
    assert recall_at_k(["d1", "d5", "d2"], {"d1", "d2"}, 1) == 0.5


def test_recall_relevant_subset_of_topk():
    assert recall_at_k(["d1", "d2", "d3"], {"d2"}, 3) == 1.0


def test_recall_empty_relevant_undefined():
    with pytest.raises(UndefinedMetricError):
        recall_at_k(["d1"], set(), 1)


# --- MRR -----------------------------------------------------------------------


def test_mrr_worked_example():
    rankings = {
        "q1": ["rel1", "x", "y"],
        "q2": ["x", "rel2", "y"],
        "q3": ["x", "y", "z"],
    }
    qrels = {"q1": {"rel1"}, "q2": {"rel2"}, "q3": {"rel3"}}
    assert mrr_at_k(rankings, qrels, 3) == 0.5  # mean of (1.0, 0.5, 0.0), exact


def test_mrr_skips_queries_without_judgments():
    rankings = {"q1": ["rel1"], "q2": ["x"]}
    qrels = {"q1": {"rel1"}, "q2": set()}
    assert mrr_at_k(rankings, qrels, 1) == 1.0


def test_mrr_empty_query_set_undefined():
    with pytest.raises(UndefinedMetricError):
        mrr_at_k({}, {}, 5)


def test_mrr_monotone_in_k():
    rankings = {"q1": ["a", "b", "rel", "c"], "q2": ["rel", "x"]}
    qrels = {"q1": {"rel"}, "q2": {"rel"}}
    values = [mrr_at_k(rankings, qrels, k) for k in (1, 2, 3, 4)]
    assert values == sorted(values)


# --- exact match -----------------------------------------------------------------


def test_exact_match_identity():
    assert exact_match("fever", ["fever"]) == 1


def test_exact_match_normalized():
    assert exact_match("The Fever.", ["fever"]) == 1


def test_exact_match_distinct():
    assert exact_match("fever and cough", ["fever"]) == 0


def test_exact_match_unanswerable_convention():
    assert exact_match("", []) == 1
    assert exact_match("something", []) == 0


@given(st.sampled_from(["fever", "dry cough", "loss of smell"]))
def test_exact_match_invariant_under_noise(gold):
    noisy = "The " + gold.upper() + "!!"
    assert exact_match(noisy, [gold]) == 1
    assert exact_match(gold, [noisy]) == 1


# --- token F1 -----------------------------------------------------------------


def test_token_f1_identity():
    assert token_f1("dry cough", "dry cough") == 1.0


def test_token_f1_disjoint():
    assert token_f1("fever", "cough") == 0.0


def test_token_f1_hand_value():
    assert token_f1("fever and cough", "dry cough") == pytest.approx(0.4)


def test_token_f1_empty_conventions():
    assert token_f1("", "") == 1.0
    assert token_f1("fever", "") == 0.0
    assert token_f1("", "fever") == 0.0


@settings(max_examples=50)
@given(
    st.lists(st.sampled_from(["fever", "cough", "dry", "acute"]), max_size=5).map(" ".join),
    st.lists(st.sampled_from(["fever", "cough", "dry", "acute"]), max_size=5).map(" ".join),
)
def test_token_f1_symmetric(a, b):
    assert token_f1(a, b) == pytest.approx(token_f1(b, a))


def test_em_implies_full_token_f1():
    for pred, gold in (("The Fever.", "fever"), ("dry cough", "Dry Cough!")):
        assert exact_match(pred, [gold]) == 1
        assert token_f1(pred, gold) == 1.0


# --- SAS --------------------------------------------------------------------------


def test_sas_perfect_predictions():
    preds = ["fever", "dry cough"]
    golds = [["fever"], ["dry cough"]]
    assert sas(preds, golds, TokenF1Scorer()) == 1.0


class ZeroScorer(TokenF1Scorer):
    def score(self, pred, gold):
        return 0.0


def test_sas_zero_scorer():
    assert sas(["a"], [["b"]], ZeroScorer()) == 0.0


def test_sas_mean_of_example_scores():
    preds = ["fever", "fever and cough"]
    golds = [["fever"], ["dry cough"]]
    assert sas(preds, golds, TokenF1Scorer()) == pytest.approx((1.0 + 0.4) / 2)


def test_sas_alignment_error():
    with pytest.raises(AlignmentError):
        sas(["a"], [["a"], ["b"]], TokenF1Scorer())


def test_sas_takes_best_gold():
    assert sas(["dry cough"], [["fever", "dry cough"]], TokenF1Scorer()) == 1.0


# --- accuracy -----------------------------------------------------------------------


def ex(eid, context, answer=None, impossible=False):
    answers = () if impossible else (SquadAnswer(answer, context.index(answer)),)
    return SquadExample(id=eid, question="?", context=context, answers=answers, is_impossible=impossible)


def test_accuracy_all_exact():
    examples = [ex("q1", "fever was seen", "fever")]
    assert answer_accuracy([make_answer("fever")], examples) == 1.0


def test_accuracy_no_answer_on_impossible_counts():
    examples = [ex("q1", "ctx", impossible=True)]
    assert answer_accuracy([make_answer("", kind="no_answer")], examples) == 1.0


def test_accuracy_half():
    examples = [ex("q1", "fever was seen", "fever"), ex("q2", "cough was seen", "cough")]
    preds = [make_answer("fever"), make_answer("unrelated words")]
    assert answer_accuracy(preds, examples) == 0.5


def test_accuracy_alignment_error():
    with pytest.raises(AlignmentError):
        answer_accuracy([], [ex("q1", "fever", "fever")])


# --- evaluate ---------------------------------------------------------------------


def eval_fixture():
    texts = {
        "D1": "the zorblax pathogen causes fever and chills in patients",
        "D2": "the quemvir vaccine reduces severe outcomes substantially",
        "D3": "wearing masks prevents the spread of quorvulent droplets",
    }
    store = make_store(texts)
    model = fit(store.iter_passages())
    pipeline = build_default_pipeline(RetrieverNode(model, store), BaselineReaderNode(model))
    examples = [
        SquadExample(
            id="q1", question="What does the zorblax pathogen cause?",
            context=store.documents["D1"].text,
            answers=(SquadAnswer("fever and chills", store.documents["D1"].text.index("fever and chills")),),
            document_id="D1",
        ),
        SquadExample(
            id="q2", question="What does the quemvir vaccine reduce?",
            context=store.documents["D2"].text,
            answers=(SquadAnswer("severe outcomes", store.documents["D2"].text.index("severe outcomes")),),
            document_id="D2",
        ),
    ]
    ds = SquadDataset(version="v2.0", examples=examples, provenance={"source": "fixture"})
    return store, pipeline, ds


def test_evaluate_rank1_by_construction():
    store, pipeline, ds = eval_fixture()
    retriever_eval, reader_eval = evaluate(pipeline, ds, store, ks=(5, 10, 20))
    for k in (5, 10, 20):
        assert retriever_eval.per_k[k]["recall"] == 1.0
        assert retriever_eval.per_k[k]["mrr"] == 1.0
        assert 0.0 <= reader_eval.per_k[k]["em"] <= 1.0


class GoldReaderNode:
    """Oracle reader: always answers with the gold span of the question."""

    def __init__(self, dataset, store):
        self.by_question = {ex.question: ex for ex in dataset.examples}
        self.store = store

    def run(self, ctx):
        request = ctx["request"]
        example = self.by_question[request.query]
        gold = example.answers[0]
        doc = self.store.documents[example.document_id]
        start = doc.text.index(gold.text)
        return {
            "answers": [
                Answer(
                    answer=gold.text, type="extractive", score=1.0 - 1e-9, context=doc.text, meta=doc.meta,
                    offsets_in_document=(start, start + len(gold.text)),
                    offsets_in_context=(start, start + len(gold.text)),
                    doc_id=example.document_id, passage_id=f"{example.document_id}#0",
                )
            ]
        }


def test_evaluate_with_oracle_reader_is_perfect():
    store, pipeline, ds = eval_fixture()
    retriever = pipeline.nodes["retriever"]
    oracle_pipeline = build_default_pipeline(retriever, GoldReaderNode(ds, store))
    _, reader_eval = evaluate(oracle_pipeline, ds, store, ks=(5,))
    assert reader_eval.per_k[5]["em"] == 1.0
    assert reader_eval.per_k[5]["sas"] == 1.0
    assert reader_eval.per_k[5]["accuracy"] == 1.0


def test_recall_and_mrr_monotone_over_random_queries():
    store, pipeline, ds = eval_fixture()
    retriever_eval, _ = evaluate(pipeline, ds, store, ks=(5, 10, 20))
    recalls = [retriever_eval.per_k[k]["recall"] for k in (5, 10, 20)]
    mrrs = [retriever_eval.per_k[k]["mrr"] for k in (5, 10, 20)]
    assert recalls == sorted(recalls)
    assert mrrs == sorted(mrrs)


# --- report -----------------------------------------------------------------------


def test_report_dict_shape():
    retriever_eval = RetrieverEval(per_k={5: {"precision": 0.2, "recall": 1.0, "mrr": 1.0}})
    reader_eval = ReaderEval(per_k={5: {"em": 0.5, "accuracy": 0.5, "sas": 0.7}})
    payload = report_dict("toy", retriever_eval, reader_eval)
    assert payload["dataset"] == "toy"
    assert payload["retriever"]["5"] == {"precision": 0.2, "recall": 1.0, "mrr": 1.0}
    assert payload["reader"]["5"] == {"em": 0.5, "accuracy": 0.5, "sas": 0.7}


def test_render_table_mentions_metrics():
    retriever_eval = RetrieverEval(per_k={5: {"precision": 0.2, "recall": 1.0, "mrr": 1.0}})
    reader_eval = ReaderEval(per_k={5: {"em": 0.5, "accuracy": 0.5, "sas": 0.7}})
    table = render_table("toy", retriever_eval, reader_eval)
    for token in ("precision", "recall", "mrr", "em", "accuracy", "sas", "toy"):
        assert token in table


# --- remote scorer ------------------------------------------------------------------


def test_remote_scorer_round_trip():
    def handler(request):
        return httpx.Response(200, json={"scores": [0.75]})

    scorer = RemoteScorer("http://scorer/score", client=httpx.Client(transport=httpx.MockTransport(handler)))
    assert scorer.score("a", "b") == 0.75


def test_remote_scorer_rejects_bad_payload():
    def handler(request):
        return httpx.Response(200, json={"scores": [1.7]})

    scorer = RemoteScorer("http://scorer/score", client=httpx.Client(transport=httpx.MockTransport(handler)))
    with pytest.raises(RemoteUnavailableError):
        scorer.score("a", "b")


def test_remote_scorer_transport_error():
    def handler(request):
        raise httpx.ConnectError("down")

    scorer = RemoteScorer("http://scorer/score", client=httpx.Client(transport=httpx.MockTransport(handler)))
    with pytest.raises(RemoteUnavailableError):
        scorer.score("a", "b")
