"""Scoring protocols: three token-level scenarios, two entity-level ones.

All metrics are micro-averaged: counts pool over the whole evaluation set
before precision/recall are formed, and empty denominators yield 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .corpus import Annotation, LabelSet, bio_category
from .errors import CrossDocumentAnnotation, LengthMismatch

TOKEN_SCENARIOS = ("token-detection", "token-relaxed", "token-strict")
ENTITY_SCENARIOS = ("entity-detection", "entity-classification")
ALL_SCENARIOS = TOKEN_SCENARIOS + ENTITY_SCENARIOS


@dataclass(frozen=True)
class Metrics:
    """Micro-averaged counts and derived scores for one scenario."""

    scenario: str
    tp: int
    fp: int
    fn: int

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 0.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0


def _token_outcome(gold: str, pred: str, scenario: str) -> tuple[int, int, int]:
    """(tp, fp, fn) contribution of one aligned token pair."""
    if scenario == "token-detection":
        gold_pos, pred_pos = gold != "O", pred != "O"
        match = gold_pos and pred_pos
    elif scenario == "token-relaxed":
        gold_pos, pred_pos = gold != "O", pred != "O"
        match = gold_pos and pred_pos and bio_category(gold) == bio_category(pred)
    elif scenario == "token-strict":
        gold_pos, pred_pos = gold != "O", pred != "O"
        match = gold_pos and pred_pos and gold == pred
    else:
        raise ValueError(f"unknown token scenario {scenario!r}")
    if match:
        return 1, 0, 0
    # A category or prefix mismatch counts against both sides.
    return 0, int(pred_pos), int(gold_pos)


def token_metrics(
    gold: list[str],
    pred: list[str],
    scenario: str,
) -> Metrics:
    """Score aligned BIO sequences under one token-level scenario."""
    if len(gold) != len(pred):
        raise LengthMismatch(f"{len(gold)} gold tags vs {len(pred)} predictions")
    tp = fp = fn = 0
    for g, p in zip(gold, pred):
        dtp, dfp, dfn = _token_outcome(g, p, scenario)
        tp += dtp
        fp += dfp
        fn += dfn
    return Metrics(scenario=scenario, tp=tp, fp=fp, fn=fn)


def token_metrics_all(gold: list[str], pred: list[str]) -> dict[str, Metrics]:
    return {s: token_metrics(gold, pred, s) for s in TOKEN_SCENARIOS}


@dataclass
class ConfusionMatrix:
    """Gold-by-predicted token counts over categories plus O."""

    labels: list[str]               # category names, O last
    counts: list[list[int]]

    def normalized(self) -> list[list[float]]:
        """Row-normalized view, rounded half-up to 2 decimals."""
        out = []
        for row in self.counts:
            total = sum(row)
            if total == 0:
                out.append([0.0] * len(row))
                continue
            out.append([
                float(Decimal(cell / total).quantize(Decimal("0.01"), ROUND_HALF_UP))
                for cell in row
            ])
        return out

    def to_tsv(self) -> str:
        lines = ["\t".join(["gold\\pred"] + self.labels)]
        for name, row in zip(self.labels, self.normalized()):
            lines.append("\t".join([name] + [f"{v:.2f}" for v in row]))
        return "\n".join(lines) + "\n"


def confusion_matrix(
    gold: list[str],
    pred: list[str],
    labels: LabelSet,
) -> ConfusionMatrix:
    """Relaxed-scenario confusion: categories of aligned tokens."""
    if len(gold) != len(pred):
        raise LengthMismatch(f"{len(gold)} gold tags vs {len(pred)} predictions")
    names = list(labels.categories) + ["O"]
    index = {name: i for i, name in enumerate(names)}
    counts = [[0] * len(names) for _ in names]
    for g, p in zip(gold, pred):
        counts[index[bio_category(g) or "O"]][index[bio_category(p) or "O"]] += 1
    return ConfusionMatrix(labels=names, counts=counts)


def _as_doc_map(
    annotations: dict[str, list[Annotation]] | list[Annotation],
) -> dict[str, list[Annotation]]:
    if isinstance(annotations, dict):
        return annotations
    return {"": list(annotations)}


def entity_metrics(
    gold: dict[str, list[Annotation]] | list[Annotation],
    pred: dict[str, list[Annotation]] | list[Annotation],
    mode: str,
) -> Metrics:
    """Exact-span matching per document, pooled over the collection.

    Detection keys on (start, end); classification on (start, end,
    category). Plain lists are treated as one unnamed document.
    """
    if mode not in ("detection", "classification"):
        raise ValueError(f"unknown entity mode {mode!r}")
    gold_map = _as_doc_map(gold)
    pred_map = _as_doc_map(pred)
    unknown = set(pred_map) - set(gold_map)
    if unknown:
        raise CrossDocumentAnnotation(
            f"predictions reference unknown documents: {sorted(unknown)}"
        )

    def key(doc_id: str, ann: Annotation):
        if mode == "detection":
            return doc_id, ann.start, ann.end
        return doc_id, ann.start, ann.end, ann.category

    from collections import Counter

    gold_keys = Counter(key(d, a) for d, anns in gold_map.items() for a in anns)
    pred_keys = Counter(key(d, a) for d, anns in pred_map.items() for a in anns)
    tp = sum((gold_keys & pred_keys).values())
    return Metrics(
        scenario=f"entity-{mode}",
        tp=tp,
        fp=sum(pred_keys.values()) - tp,
        fn=sum(gold_keys.values()) - tp,
    )


def metrics_to_csv(rows: list[tuple[str, float, Metrics]]) -> str:
    """Render (system, fraction, Metrics) triples as the report CSV."""
    lines = ["system,fraction,scenario,precision,recall,f1,tp,fp,fn"]
    for system, fraction, m in rows:
        lines.append(
            f"{system},{fraction:g},{m.scenario},"
            f"{m.precision:.4f},{m.recall:.4f},{m.f1:.4f},{m.tp},{m.fp},{m.fn}"
        )
    return "\n".join(lines) + "\n"
