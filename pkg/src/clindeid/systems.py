"""Uniform fit/tag adapters so evaluation code can drive any tagger."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

from .corpus import LabelSet, Sentence, bio_category
from .crf import CrfConfig, CrfModel, TrainingStats, fit_crf
from .errors import EmptyTrainingSet
from .rules import (
    GAZETTEER_CATEGORIES,
    Gazetteer,
    RuleSet,
    default_name_paths,
    load_name_list,
    tag_rules,
)


@runtime_checkable
class TrainableTagger(Protocol):
    """Anything that can be fit on gold sentences and tag new ones."""

    name: str

    def fit(self, train: list[Sentence]) -> None: ...

    def tag(self, sentences: list[Sentence]) -> list[list[str]]: ...


def gold_phrases(sentences: list[Sentence]) -> dict[str, set[tuple[str, ...]]]:
    """Casefolded token tuples of every gold span, keyed by category."""
    phrases: dict[str, set[tuple[str, ...]]] = {}
    for sent in sentences:
        if sent.gold is None:
            raise EmptyTrainingSet(f"sentence {sent.doc_id}:{sent.index} has no gold tags")
        tags = list(sent.gold)
        i = 0
        while i < len(tags):
            cat = bio_category(tags[i])
            if cat is None:
                i += 1
                continue
            j = i + 1
            while j < len(tags) and tags[j] == f"I-{cat}":
                j += 1
            phrase = tuple(t.surface.casefold() for t in sent.tokens[i:j])
            phrases.setdefault(cat, set()).add(phrase)
            i = j
    return phrases


@dataclass
class RuleBaselineSystem:
    """Pattern-and-dictionary tagger refit by recompiling its dictionaries."""

    labels: LabelSet = field(default_factory=LabelSet)
    include_honorific: bool = True
    extended_age: bool = True
    name: str = "rules"
    rules: RuleSet | None = None

    def fit(self, train: list[Sentence]) -> None:
        if not train:
            raise EmptyTrainingSet("no training sentences")
        phrases = gold_phrases(train)
        gazetteers = {}
        for cat in GAZETTEER_CATEGORIES:
            entries = frozenset(phrases.get(cat, set()))
            longest = max((len(e) for e in entries), default=0)
            gazetteers[cat] = Gazetteer(entries=entries, max_phrase_len=longest)
        names: list[str] = []
        for path in default_name_paths():
            names.extend(load_name_list(path))
        self.rules = RuleSet(
            gazetteers=gazetteers,
            name_list=tuple(dict.fromkeys(names)),
            include_honorific=self.include_honorific,
            extended_age=self.extended_age,
        )

    def tag(self, sentences: list[Sentence]) -> list[list[str]]:
        if self.rules is None:
            raise EmptyTrainingSet("rule system has not been fit")
        return [tag_rules(sent, self.rules) for sent in sentences]


@dataclass
class CrfSystem:
    """Linear-chain CRF wrapped behind the common fit/tag protocol."""

    config: CrfConfig = field(default_factory=CrfConfig)
    labels: LabelSet = field(default_factory=LabelSet)
    name: str = "crf"
    model: CrfModel | None = None
    stats: TrainingStats | None = None

    def fit(self, train: list[Sentence]) -> None:
        self.model, self.stats = fit_crf(train, config=self.config, labels=self.labels)

    def tag(self, sentences: list[Sentence]) -> list[list[str]]:
        if self.model is None:
            raise EmptyTrainingSet("CRF system has not been fit")
        return self.model.tag(sentences)
