"""BRAT standoff format: `.txt` + `.ann` pairs with `T` entity lines.

Only entity lines (`T<n>\\t<LABEL> <start> <end>\\t<surface>`) are read;
relation, event, attribute and note lines are skipped with a warning.
Discontinuous spans (`start end;start end`) are out of scope and rejected.
"""
from __future__ import annotations

import logging
import re
from pathlib import Path

from ..errors import MalformedLine
from .types import Annotation, Document, LabelSet

log = logging.getLogger(__name__)

_ENTITY_RE = re.compile(r"^(T\S+)\t(\S+) (\d+) (\d+)\t(.*)$")


def parse_brat(
    text_content: str,
    ann_content: str,
    doc_id: str = "",
    labels: LabelSet | None = None,
) -> Document:
    """Build a validated Document from the contents of a .txt/.ann pair."""
    annotations: list[Annotation] = []
    for lineno, line in enumerate(ann_content.splitlines(), start=1):
        if not line.strip():
            continue
        if not line.startswith("T"):
            log.warning("%s: skipping non-entity line %d: %r", doc_id, lineno, line[:40])
            continue
        m = _ENTITY_RE.match(line)
        if m is None:
            raise MalformedLine(f"{doc_id}: bad entity line {lineno}: {line!r}")
        ann_id, category, start_s, end_s, surface = m.groups()
        ann = Annotation(
            id=ann_id,
            category=category,
            start=int(start_s),
            end=int(end_s),
            surface=surface,
        )
        ann.validate_against(text_content, labels)
        annotations.append(ann)
    doc = Document(id=doc_id, text=text_content, annotations=annotations)
    return doc


def serialize_brat(doc: Document) -> tuple[str, str]:
    """Render a Document back to (.txt content, .ann content).

    Entity lines are emitted in ascending numeric id order so that
    parse_brat(*serialize_brat(doc)) round-trips exactly.
    """
    def ann_key(a: Annotation):
        m = re.match(r"T(\d+)$", a.id)
        return (0, int(m.group(1))) if m else (1, a.id)

    lines = [
        f"{a.id}\t{a.category} {a.start} {a.end}\t{a.surface}"
        for a in sorted(doc.annotations, key=ann_key)
    ]
    ann_content = "".join(line + "\n" for line in lines)
    return doc.text, ann_content


def read_brat_file(txt_path: str | Path, labels: LabelSet | None = None) -> Document:
    """Read one document from a .txt file and its sibling .ann file."""
    txt_path = Path(txt_path)
    text = txt_path.read_text(encoding="utf-8")
    ann_path = txt_path.with_suffix(".ann")
    ann = ann_path.read_text(encoding="utf-8") if ann_path.exists() else ""
    return parse_brat(text, ann, doc_id=txt_path.stem, labels=labels)


def read_brat_dir(directory: str | Path, labels: LabelSet | None = None) -> list[Document]:
    """Read every .txt/.ann pair under a directory, sorted by file name."""
    directory = Path(directory)
    return [read_brat_file(p, labels) for p in sorted(directory.glob("*.txt"))]


def write_brat_dir(docs: list[Document], directory: str | Path) -> None:
    """Write one .txt/.ann pair per document into a directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for doc in docs:
        text, ann = serialize_brat(doc)
        (directory / f"{doc.id}.txt").write_text(text, encoding="utf-8")
        (directory / f"{doc.id}.ann").write_text(ann, encoding="utf-8")
