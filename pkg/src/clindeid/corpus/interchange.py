"""Token-level TSV interchange between taggers, scorers, and external tools.

Layout: a `# columns:` header, one token per row, a blank line between
sentences, and `-` for absent cells. `# doc:` comments carry document ids;
`# index:` comments appear only when sentence numbering is not consecutive,
so a write/read cycle reproduces the input exactly.
"""
from __future__ import annotations

from pathlib import Path

from ..errors import LabelVocabularyError, MalformedRow
from .types import LabelSet, Sentence, Token

REQUIRED_COLUMNS = ("token", "start", "end", "gold", "pred")
OPTIONAL_COLUMNS = ("lemma", "pos", "ner")
ABSENT = "-"


def write_interchange(path: str | Path, sentences: list[Sentence]) -> None:
    """Serialize sentences (with any gold/pred tags and extra features)."""
    extras = [
        name for name in OPTIONAL_COLUMNS
        if any(t.features and name in t.features for s in sentences for t in s.tokens)
    ]
    lines = ["# columns: " + " ".join(REQUIRED_COLUMNS + tuple(extras))]
    doc_id: str | None = None
    next_index = 0
    for sent in sentences:
        if sent.doc_id != doc_id:
            doc_id = sent.doc_id
            next_index = 0
            lines.append(f"# doc: {doc_id}")
        if sent.index != next_index:
            lines.append(f"# index: {sent.index}")
        next_index = sent.index + 1
        for i, tok in enumerate(sent.tokens):
            gold = sent.gold[i] if sent.gold is not None else ABSENT
            pred = sent.pred[i] if sent.pred is not None else ABSENT
            row = [tok.surface, str(tok.start), str(tok.end), gold, pred]
            for name in extras:
                row.append((tok.features or {}).get(name, ABSENT))
            lines.append("\t".join(row))
        lines.append("")
    Path(path).write_text("\n".join(lines), encoding="utf-8")


def read_interchange(path: str | Path, labels: LabelSet) -> list[Sentence]:
    """Parse an interchange file, validating tags against the label set."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.split("\n")
    if not lines or not lines[0].startswith("# columns: "):
        raise MalformedRow(f"{path}: missing '# columns:' header")
    columns = lines[0][len("# columns: "):].split()
    if tuple(columns[:5]) != REQUIRED_COLUMNS:
        raise MalformedRow(f"{path}: header must begin with {' '.join(REQUIRED_COLUMNS)}")
    extras = columns[5:]
    if tuple(extras) != OPTIONAL_COLUMNS[:len(extras)] or len(set(extras)) != len(extras):
        raise MalformedRow(f"{path}: optional columns must be a prefix of {OPTIONAL_COLUMNS}")
    known = set(labels.bio_labels())

    sentences: list[Sentence] = []
    rows: list[list[str]] = []
    doc_id = ""
    index_override: int | None = None
    next_index = 0

    def flush() -> None:
        nonlocal rows, index_override, next_index
        if not rows:
            return
        index = next_index if index_override is None else index_override
        sentences.append(_build_sentence(rows, extras, known, doc_id, index, path))
        next_index = index + 1
        index_override = None
        rows = []

    for lineno, line in enumerate(lines[1:], start=2):
        if line == "":
            flush()
        elif line.startswith("# doc: "):
            flush()
            doc_id = line[len("# doc: "):]
            next_index = 0
        elif line.startswith("# index: "):
            try:
                index_override = int(line[len("# index: "):])
            except ValueError:
                raise MalformedRow(f"{path}:{lineno}: bad sentence index") from None
        elif line.startswith("#"):
            continue
        else:
            cells = line.split("\t")
            if len(cells) != len(columns):
                raise MalformedRow(
                    f"{path}:{lineno}: expected {len(columns)} columns, got {len(cells)}"
                )
            rows.append(cells)
    flush()
    return sentences


def _build_sentence(
    rows: list[list[str]],
    extras: list[str],
    known: set[str],
    doc_id: str,
    index: int,
    path: str | Path,
) -> Sentence:
    tokens: list[Token] = []
    gold: list[str] = []
    pred: list[str] = []
    for cells in rows:
        surface, start_s, end_s = cells[0], cells[1], cells[2]
        try:
            start, end = int(start_s), int(end_s)
        except ValueError:
            raise MalformedRow(f"{path}: non-integer offsets {start_s!r} {end_s!r}") from None
        if start < 0 or end <= start:
            raise MalformedRow(f"{path}: bad offsets [{start}, {end})")
        for tag in (cells[3], cells[4]):
            if tag != ABSENT and tag not in known:
                raise LabelVocabularyError(f"{path}: tag {tag!r} not in label set")
        gold.append(cells[3])
        pred.append(cells[4])
        features = {
            name: value
            for name, value in zip(extras, cells[5:])
            if value != ABSENT
        }
        tokens.append(Token(surface, start, end, index, features or None))
    return Sentence(
        tokens=tokens,
        doc_id=doc_id,
        index=index,
        gold=_column_or_none(gold, "gold", path),
        pred=_column_or_none(pred, "pred", path),
    )


def _column_or_none(cells: list[str], name: str, path: str | Path) -> list[str] | None:
    if all(c == ABSENT for c in cells):
        return None
    if any(c == ABSENT for c in cells):
        raise MalformedRow(f"{path}: {name} column partially filled within a sentence")
    return cells
