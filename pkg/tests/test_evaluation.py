"""Scoring against naive reference implementations and pinned examples."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clindeid.corpus import Annotation, LabelSet
from clindeid.errors import CrossDocumentAnnotation, LengthMismatch
from clindeid.evaluation import (
    ConfusionMatrix,
    Metrics,
    TOKEN_SCENARIOS,
    confusion_matrix,
    entity_metrics,
    metrics_to_csv,
    token_metrics,
)

SMALL_LABELS = LabelSet(categories=("Date", "Hospital", "Age"))
TAG_POOL = ["O"] + [f"{p}-{c}" for c in SMALL_LABELS.categories for p in ("B", "I")]


def reference_token_counts(gold, pred, scenario):
    """Independent per-token reimplementation used as the oracle."""
    tp = fp = fn = 0
    for g, p in zip(gold, pred):
        g_ent, p_ent = g != "O", p != "O"
        if scenario == "token-detection":
            match = g_ent and p_ent
        elif scenario == "token-relaxed":
            match = g_ent and p_ent and g.split("-", 1)[1] == p.split("-", 1)[1]
        elif scenario == "token-strict":
            match = g_ent and p_ent and g == p
        else:
            raise AssertionError(scenario)
        if match:
            tp += 1
        else:
            fp += int(p_ent)
            fn += int(g_ent)
    return tp, fp, fn


def reference_entity_counts(gold, pred, mode):
    """Quadratic greedy matcher over exact keys."""

    def key(ann):
        return (ann.start, ann.end) if mode == "detection" else (ann.start, ann.end, ann.category)

    remaining = [key(a) for a in gold]
    tp = 0
    for ann in pred:
        k = key(ann)
        if k in remaining:
            remaining.remove(k)
            tp += 1
    return tp, len(pred) - tp, len(gold) - tp


def test_reference_oracle_agrees_on_1000_random_token_instances():
    rng = random.Random(20240814)
    for case in range(1000):
        n = rng.randint(0, 12)
        gold = [rng.choice(TAG_POOL) for _ in range(n)]
        pred = [rng.choice(TAG_POOL) for _ in range(n)]
        scenario = TOKEN_SCENARIOS[case % 3]
        m = token_metrics(gold, pred, scenario)
        assert (m.tp, m.fp, m.fn) == reference_token_counts(gold, pred, scenario)


def test_reference_oracle_agrees_on_random_entity_instances():
    rng = random.Random(7)
    for case in range(300):
        def anns(count):
            out = []
            for i in range(count):
                start = rng.randint(0, 20)
                end = start + rng.randint(1, 5)
                cat = rng.choice(SMALL_LABELS.categories)
                out.append(Annotation(f"T{i + 1}", cat, start, end, "x" * (end - start)))
            return out

        gold, pred = anns(rng.randint(0, 6)), anns(rng.randint(0, 6))
        mode = "detection" if case % 2 else "classification"
        m = entity_metrics(gold, pred, mode)
        assert (m.tp, m.fp, m.fn) == reference_entity_counts(gold, pred, mode)


def test_boundary_disagreement_counts_against_both_sides():
    gold = ["O", "O", "B-Hospital", "I-Hospital", "I-Hospital"]
    pred = ["O", "O", "B-Hospital", "B-Hospital", "I-Hospital"]
    strict = token_metrics(gold, pred, "token-strict")
    assert (strict.tp, strict.fp, strict.fn) == (2, 1, 1)
    assert strict.precision == pytest.approx(2 / 3)
    assert strict.recall == pytest.approx(2 / 3)
    for easier in ("token-detection", "token-relaxed"):
        m = token_metrics(gold, pred, easier)
        assert (m.tp, m.fp, m.fn) == (3, 0, 0)
        assert m.f1 == 1.0


def test_entity_detection_pinned_example():
    gold = [
        Annotation("T1", "Date", 0, 4, "hoy "[:4]),
        Annotation("T2", "Age", 10, 12, "64"),
        Annotation("T3", "Doctor", 20, 25, "Lopez"),
    ]
    pred = [
        Annotation("T1", "Date", 0, 4, "hoy "[:4]),
        Annotation("T2", "Age", 30, 32, "59"),
    ]
    m = entity_metrics(gold, pred, "detection")
    assert m.precision == pytest.approx(0.5)
    assert m.recall == pytest.approx(1 / 3)
    assert m.f1 == pytest.approx(0.4)


def test_entity_detection_ignores_predicted_category():
    gold = [Annotation("T1", "Date", 0, 4, "2016")]
    pred_right = [Annotation("T1", "Date", 0, 4, "2016")]
    pred_wrong = [Annotation("T1", "Age", 0, 4, "2016")]
    assert entity_metrics(gold, pred_right, "detection").f1 == 1.0
    assert entity_metrics(gold, pred_wrong, "detection").f1 == 1.0
    assert entity_metrics(gold, pred_wrong, "classification").f1 == 0.0


def test_entity_metrics_respect_document_boundaries():
    ann = Annotation("T1", "Date", 0, 4, "2016")
    gold = {"a": [ann], "b": []}
    same_doc = {"a": [ann], "b": []}
    other_doc = {"a": [], "b": [ann]}
    assert entity_metrics(gold, same_doc, "detection").f1 == 1.0
    assert entity_metrics(gold, other_doc, "detection").f1 == 0.0


def test_entity_metrics_reject_unknown_documents():
    gold = {"a": [Annotation("T1", "Date", 0, 4, "2016")]}
    pred = {"z": [Annotation("T1", "Date", 0, 4, "2016")]}
    with pytest.raises(CrossDocumentAnnotation):
        entity_metrics(gold, pred, "detection")


def test_unknown_scenario_and_mode_rejected():
    with pytest.raises(ValueError):
        token_metrics(["O"], ["O"], "token-fuzzy")
    with pytest.raises(ValueError):
        entity_metrics([], [], "approximate")


def test_length_mismatch_rejected():
    with pytest.raises(LengthMismatch):
        token_metrics(["O", "O"], ["O"], "token-strict")
    with pytest.raises(LengthMismatch):
        confusion_matrix(["O"], [], SMALL_LABELS)


def test_empty_denominators_give_zero():
    m = token_metrics(["O", "O"], ["O", "O"], "token-strict")
    assert (m.precision, m.recall, m.f1) == (0.0, 0.0, 0.0)
    m = entity_metrics([], [], "detection")
    assert (m.precision, m.recall, m.f1) == (0.0, 0.0, 0.0)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.tuples(st.sampled_from(TAG_POOL), st.sampled_from(TAG_POOL)),
        max_size=20,
    )
)
def test_scenarios_are_ordered_by_leniency(pairs):
    gold = [g for g, _ in pairs]
    pred = [p for _, p in pairs]
    det = token_metrics(gold, pred, "token-detection")
    rel = token_metrics(gold, pred, "token-relaxed")
    strict = token_metrics(gold, pred, "token-strict")
    assert det.tp >= rel.tp >= strict.tp
    assert det.f1 >= rel.f1 >= strict.f1
    assert det.precision >= rel.precision >= strict.precision
    assert det.recall >= rel.recall >= strict.recall


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.tuples(st.sampled_from(TAG_POOL), st.sampled_from(TAG_POOL)),
        max_size=20,
    ),
    st.sampled_from(TOKEN_SCENARIOS),
)
def test_swapping_gold_and_pred_swaps_precision_and_recall(pairs, scenario):
    gold = [g for g, _ in pairs]
    pred = [p for _, p in pairs]
    forward = token_metrics(gold, pred, scenario)
    backward = token_metrics(pred, gold, scenario)
    assert forward.precision == pytest.approx(backward.recall)
    assert forward.recall == pytest.approx(backward.precision)
    assert forward.f1 == pytest.approx(backward.f1)


def test_confusion_matrix_counts_and_marginals():
    gold = ["B-Date", "I-Date", "O", "B-Age", "O"]
    pred = ["B-Date", "O", "O", "B-Date", "B-Age"]
    cm = confusion_matrix(gold, pred, SMALL_LABELS)
    assert cm.labels == ["Date", "Hospital", "Age", "O"]
    assert sum(sum(row) for row in cm.counts) == len(gold)
    by = {(g, p): cm.counts[cm.labels.index(g)][cm.labels.index(p)]
          for g in cm.labels for p in cm.labels}
    assert by[("Date", "Date")] == 1
    assert by[("Date", "O")] == 1
    assert by[("Age", "Date")] == 1
    assert by[("O", "Age")] == 1
    assert by[("O", "O")] == 1


def test_confusion_matrix_normalization_rounds_half_up():
    cm = ConfusionMatrix(labels=["Date", "O"], counts=[[1, 7], [0, 0]])
    normalized = cm.normalized()
    # 1/8 = 0.125 rounds up to 0.13 under half-up, not down to 0.12.
    assert normalized[0] == [0.13, 0.88]
    assert normalized[1] == [0.0, 0.0]
    for row, counts in zip(normalized, cm.counts):
        if sum(counts):
            assert sum(row) == pytest.approx(1.0, abs=0.01 * len(row))


def test_confusion_matrix_tsv_shape():
    gold = ["B-Date", "O"]
    pred = ["B-Date", "O"]
    text = confusion_matrix(gold, pred, SMALL_LABELS).to_tsv()
    lines = text.strip().split("\n")
    assert lines[0].split("\t") == ["gold\\pred", "Date", "Hospital", "Age", "O"]
    assert len(lines) == 5
    assert lines[1].split("\t")[1] == "1.00"


def test_metrics_csv_format():
    rows = [
        ("crf", 100.0, Metrics("token-strict", tp=9, fp=1, fn=3)),
        ("rules", 50.0, Metrics("token-detection", tp=0, fp=0, fn=0)),
    ]
    text = metrics_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "system,fraction,scenario,precision,recall,f1,tp,fp,fn"
    assert lines[1] == "crf,100,token-strict,0.9000,0.7500,0.8182,9,1,3"
    assert lines[2] == "rules,50,token-detection,0.0000,0.0000,0.0000,0,0,0"
