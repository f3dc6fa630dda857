"""Core data types: documents, annotations, tokens, sentences and BIO labels.

Character offsets throughout the package are Unicode scalar-value indices
into the document text (the BRAT convention), never byte offsets.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from ..errors import OffsetMismatch, OverlapError, UnknownLabel

# The 11 default sensitive-information categories, in corpus frequency order.
DEFAULT_CATEGORIES: tuple[str, ...] = (
    "Date",
    "Hospital",
    "Age",
    "Time",
    "Doctor",
    "Sex",
    "Kinship",
    "Location",
    "Patient",
    "Job",
    "Other",
)


@dataclass(frozen=True)
class LabelSet:
    """Closed, ordered set of sensitive-information categories."""

    categories: tuple[str, ...] = DEFAULT_CATEGORIES

    def __post_init__(self) -> None:
        if len(set(self.categories)) != len(self.categories):
            raise ValueError("duplicate category names in label set")

    def __contains__(self, category: str) -> bool:
        return category in self.categories

    def require(self, category: str) -> str:
        if category not in self.categories:
            raise UnknownLabel(f"unknown category {category!r}")
        return category

    def bio_labels(self) -> list[str]:
        """Full BIO alphabet: 'O' plus B-/I- for every category (2*n+1 strings)."""
        out = ["O"]
        for cat in self.categories:
            out.append(f"B-{cat}")
            out.append(f"I-{cat}")
        return out

    @classmethod
    def from_file(cls, path: str | Path) -> "LabelSet":
        """Load a label set from a plain-text file, one category per line."""
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        cats = tuple(ln.strip() for ln in lines if ln.strip() and not ln.startswith("#"))
        return cls(categories=cats)


def parse_bio(label: str) -> tuple[str, str | None]:
    """Split a BIO label string into (prefix, category); category is None for 'O'."""
    if label == "O":
        return "O", None
    if len(label) > 2 and label[1] == "-" and label[0] in ("B", "I"):
        return label[0], label[2:]
    raise UnknownLabel(f"not a BIO label: {label!r}")


def bio_category(label: str) -> str | None:
    return parse_bio(label)[1]


@dataclass(frozen=True)
class Annotation:
    """One sensitive span: category plus [start, end) character offsets."""

    id: str
    category: str
    start: int
    end: int
    surface: str

    def __post_init__(self) -> None:
        if self.start < 0 or self.end <= self.start:
            raise ValueError(f"bad offsets [{self.start}, {self.end}) for {self.id}")

    def validate_against(self, text: str, labels: LabelSet | None = None) -> None:
        if self.end > len(text):
            raise OffsetMismatch(
                f"{self.id}: end {self.end} beyond text length {len(text)}"
            )
        snippet = text[self.start:self.end]
        if snippet != self.surface:
            raise OffsetMismatch(
                f"{self.id}: surface {self.surface!r} != text slice {snippet!r}"
            )
        if labels is not None:
            labels.require(self.category)


@dataclass
class Document:
    """A plain-text clinical document with standoff sensitive-span annotations."""

    id: str
    text: str
    annotations: list[Annotation] = field(default_factory=list)

    def validate(self, labels: LabelSet | None = None) -> None:
        """Check offset integrity and non-overlap of all annotations."""
        for ann in self.annotations:
            ann.validate_against(self.text, labels)
        ordered = sorted(self.annotations, key=lambda a: (a.start, a.end))
        for prev, cur in zip(ordered, ordered[1:]):
            if cur.start < prev.end:
                raise OverlapError(
                    f"{self.id}: annotations {prev.id} and {cur.id} overlap"
                )


def normalize_annotations(annotations: list[Annotation]) -> list[Annotation]:
    """Resolve overlaps by keeping the longest span (ties: earliest start).

    Returns the surviving annotations sorted by start offset.
    """
    # Longest first so that shorter overlappers are dropped; ties favour the
    # earlier span, then the original order.
    order = sorted(
        range(len(annotations)),
        key=lambda i: (-(annotations[i].end - annotations[i].start), annotations[i].start, i),
    )
    kept: list[Annotation] = []
    for i in order:
        cand = annotations[i]
        if all(cand.end <= a.start or a.end <= cand.start for a in kept):
            kept.append(cand)
    kept.sort(key=lambda a: a.start)
    return kept


@dataclass(frozen=True)
class Token:
    """A tokenized unit with its source offsets preserved."""

    surface: str
    start: int
    end: int
    sentence_index: int = 0
    features: dict[str, str] | None = None  # optional lemma/pos/ner columns


@dataclass
class Sentence:
    """A sequence of tokens from one document, with optional label layers."""

    tokens: list[Token]
    doc_id: str = ""
    index: int = 0
    gold: list[str] | None = None
    pred: list[str] | None = None

    def __len__(self) -> int:
        return len(self.tokens)

    def with_gold(self, labels: list[str]) -> "Sentence":
        return replace(self, gold=list(labels))

    def with_pred(self, labels: list[str]) -> "Sentence":
        return replace(self, pred=list(labels))


@dataclass
class CorpusSplit:
    """Document-level train/dev/test partition of a corpus."""

    train: list[Document]
    dev: list[Document]
    test: list[Document]
    seed: int
    ratios: tuple[float, float, float]

    def sizes(self) -> tuple[int, int, int]:
        return len(self.train), len(self.dev), len(self.test)
