"""Conversion between character-offset annotations and token-level BIO tags.

Encoding snaps entity boundaries outward to whole tokens: any token whose
character span overlaps an annotation is covered by it. Decoding turns
maximal B-I runs back into annotations; the two directions are inverse of
each other whenever every annotation starts and ends on token boundaries.
"""
from __future__ import annotations

from ..errors import IllFormedSequence, LengthMismatch, OverlapError, UnknownLabel
from .tokenize import split_sentences
from .types import Annotation, Document, LabelSet, Sentence, Token, parse_bio

REPAIR_POLICIES = ("i-as-b", "strict")


def encode_bio(
    tokens: list[Token],
    annotations: list[Annotation],
    labels: LabelSet,
) -> list[str]:
    """Assign one BIO tag per token from non-overlapping annotations."""
    for ann in annotations:
        labels.require(ann.category)
    ordered = sorted(annotations, key=lambda a: (a.start, a.end))
    tags = ["O"] * len(tokens)
    prev_ann: Annotation | None = None
    for i, tok in enumerate(tokens):
        hits = [a for a in ordered if a.start < tok.end and tok.start < a.end]
        if len(hits) > 1:
            raise OverlapError(
                f"token {tok.surface!r} [{tok.start}, {tok.end}) claimed by "
                f"annotations {hits[0].id} and {hits[1].id}"
            )
        if not hits:
            prev_ann = None
            continue
        hit = hits[0]
        tags[i] = ("I-" if hit is prev_ann else "B-") + hit.category
        prev_ann = hit
    return tags


def gold_sentences(doc: Document, labels: LabelSet) -> list[Sentence]:
    """Tokenize a document and attach gold BIO tags from its annotations."""
    return [
        sent.with_gold(encode_bio(sent.tokens, doc.annotations, labels))
        for sent in split_sentences(doc)
    ]


def decode_bio(
    text: str,
    tokens: list[Token],
    tags: list[str],
    labels: LabelSet,
    repair: str = "i-as-b",
) -> list[Annotation]:
    """Turn a BIO tag sequence back into character-offset annotations.

    A maximal run of B-X followed by I-X becomes one annotation spanning
    from the first token's start to the last token's end. An I-X with no
    live same-category run is ill-formed; policy "i-as-b" opens a new
    entity there, "strict" raises instead.
    """
    if repair not in REPAIR_POLICIES:
        raise ValueError(f"unknown repair policy {repair!r}; expected one of {REPAIR_POLICIES}")
    if len(tokens) != len(tags):
        raise LengthMismatch(f"{len(tokens)} tokens vs {len(tags)} tags")
    known = set(labels.bio_labels())
    annotations: list[Annotation] = []
    run_start: int | None = None
    run_end: int | None = None
    run_cat: str | None = None

    def close() -> None:
        nonlocal run_start, run_end, run_cat
        if run_cat is not None:
            assert run_start is not None and run_end is not None
            annotations.append(
                Annotation(
                    id=f"T{len(annotations) + 1}",
                    category=run_cat,
                    start=run_start,
                    end=run_end,
                    surface=text[run_start:run_end],
                )
            )
        run_start = run_end = run_cat = None

    for i, (tok, tag) in enumerate(zip(tokens, tags)):
        if tag not in known:
            raise UnknownLabel(f"tag {tag!r} at position {i} not in label set")
        prefix, category = parse_bio(tag)
        if prefix == "O":
            close()
        elif prefix == "B":
            close()
            run_start, run_end, run_cat = tok.start, tok.end, category
        else:
            if category == run_cat and run_cat is not None:
                run_end = tok.end
            elif repair == "strict":
                raise IllFormedSequence(f"dangling {tag!r} at position {i}")
            else:
                close()
                run_start, run_end, run_cat = tok.start, tok.end, category
    close()
    return annotations
