"""Learning-curve harness: refit each system on nested training subsets."""
from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field

from .corpus import (
    CorpusSplit,
    Document,
    LabelSet,
    Sentence,
    decode_bio,
    gold_sentences,
    subsample_sentences,
)
from .errors import EmptyCorpus
from .evaluation import (
    ALL_SCENARIOS,
    Metrics,
    entity_metrics,
    metrics_to_csv,
    token_metrics,
)
from .systems import TrainableTagger

log = logging.getLogger(__name__)

DEFAULT_FRACTIONS = (1, 5, 10, 25, 50, 75, 100)


def subset_fingerprint(sentences: list[Sentence]) -> str:
    """Stable digest of which sentences a subset contains."""
    payload = "\n".join(f"{s.doc_id}:{s.index}" for s in sentences)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _entity_maps(
    docs: list[Document],
    sentences: list[Sentence],
    tags: list[list[str]],
    labels: LabelSet,
) -> dict[str, list]:
    """Char-offset annotations per document, decoded from per-sentence tags."""
    texts = {doc.id: doc.text for doc in docs}
    out: dict[str, list] = {doc.id: [] for doc in docs}
    for sent, sent_tags in zip(sentences, tags):
        decoded = decode_bio(texts[sent.doc_id], list(sent.tokens), list(sent_tags), labels)
        out[sent.doc_id].extend(decoded)
    return out


def evaluate_tagger(
    tagger: TrainableTagger,
    test_docs: list[Document],
    labels: LabelSet | None = None,
) -> dict[str, Metrics]:
    """All five scenarios for one fitted tagger over a document set.

    Gold spans are snapped to token boundaries first so the entity-level
    comparison uses the same coordinate conventions as the predictions.
    """
    labels = labels if labels is not None else LabelSet()
    if not test_docs:
        raise EmptyCorpus("no evaluation documents")
    sentences: list[Sentence] = []
    for doc in test_docs:
        sentences.extend(gold_sentences(doc, labels))
    pred_tags = tagger.tag(sentences)
    gold_flat = [t for s in sentences for t in s.gold]
    pred_flat = [t for tags in pred_tags for t in tags]

    results = {
        s: token_metrics(gold_flat, pred_flat, s)
        for s in ("token-detection", "token-relaxed", "token-strict")
    }
    gold_map = _entity_maps(test_docs, sentences, [list(s.gold) for s in sentences], labels)
    pred_map = _entity_maps(test_docs, sentences, pred_tags, labels)
    results["entity-detection"] = entity_metrics(gold_map, pred_map, "detection")
    results["entity-classification"] = entity_metrics(gold_map, pred_map, "classification")
    return results


@dataclass
class AblationReport:
    """Per-system, per-fraction scores plus the subset fingerprints used."""

    fractions: tuple[int, ...]
    seed: int
    subset_hashes: dict[int, str]
    subset_sizes: dict[int, int]
    rows: list[tuple[str, int, Metrics]] = field(default_factory=list)

    def metrics(self, system: str, fraction: int, scenario: str) -> Metrics:
        for sys_name, frac, m in self.rows:
            if sys_name == system and frac == fraction and m.scenario == scenario:
                return m
        raise KeyError((system, fraction, scenario))

    def systems(self) -> list[str]:
        return list(dict.fromkeys(name for name, _, _ in self.rows))

    def to_csv(self) -> str:
        return metrics_to_csv([(n, float(f), m) for n, f, m in self.rows])

    def deltas_vs_full(self, scenario: str = "token-strict") -> str:
        """F1 drop (percentage points) at each fraction relative to 100%."""
        lines = ["system\tfraction\tf1\tdelta_pp_vs_100"]
        for name in self.systems():
            full = self.metrics(name, 100, scenario).f1
            for frac in self.fractions:
                f1 = self.metrics(name, frac, scenario).f1
                lines.append(f"{name}\t{frac}\t{f1:.4f}\t{100 * (f1 - full):+.2f}")
        return "\n".join(lines) + "\n"


def ablation_run(
    systems: list[TrainableTagger],
    split: CorpusSplit,
    fractions: tuple[int, ...] = DEFAULT_FRACTIONS,
    seed: int = 0,
    labels: LabelSet | None = None,
) -> AblationReport:
    """Retrain every system at each fraction of the training sentences.

    All systems see identical nested subsets at a given (fraction, seed);
    evaluation is always against the full test portion of the split.
    """
    labels = labels if labels is not None else LabelSet()
    if not split.train or not split.test:
        raise EmptyCorpus("ablation needs non-empty train and test portions")
    if any(not 1 <= f <= 100 for f in fractions):
        raise ValueError(f"fractions must lie in [1, 100]: {fractions}")

    train_sentences: list[Sentence] = []
    for doc in split.train:
        train_sentences.extend(gold_sentences(doc, labels))

    report = AblationReport(
        fractions=tuple(fractions), seed=seed, subset_hashes={}, subset_sizes={}
    )
    for fraction in fractions:
        subset = subsample_sentences(train_sentences, fraction, seed=seed)
        report.subset_hashes[fraction] = subset_fingerprint(subset)
        report.subset_sizes[fraction] = len(subset)
        for system in systems:
            log.info(
                "ablation: fitting %s on %d%% (%d sentences)",
                system.name, fraction, len(subset),
            )
            try:
                system.fit(subset)
                scores = evaluate_tagger(system, split.test, labels)
            except Exception as exc:
                raise RuntimeError(
                    f"[system={system.name}, fraction={fraction}%] {exc}"
                ) from exc
            for scenario in ALL_SCENARIOS:
                report.rows.append((system.name, fraction, scores[scenario]))
    return report


def check_min_f1(
    report: AblationReport,
    threshold: float,
    scenario: str = "token-strict",
    fraction: int = 100,
) -> list[str]:
    """Names of systems whose full-data F1 falls below the threshold."""
    failing = []
    for name in report.systems():
        if report.metrics(name, fraction, scenario).f1 < threshold:
            failing.append(name)
    return failing
