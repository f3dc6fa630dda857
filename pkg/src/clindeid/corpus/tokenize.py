"""Whitespace/punctuation tokenizer and sentence splitter with exact offsets.

The tokenizer never alters text: concatenating token surfaces with the
skipped whitespace reconstructs the input byte for byte. Numeric tokens
keep internal `/ : . , -` separators so that dates (`12/01/2016`,
`12-01-2016`) and times (`15:30`) stay whole, which the per-token rule
detectors rely on.
"""
from __future__ import annotations

import re

from .types import Document, Sentence, Token

# Order matters: glued numbers first, then words, then single punctuation.
_TOKEN_RE = re.compile(
    r"""
    \d+(?:[./:,\-]\d+)*   # numbers with internal separators (dates, times, decimals)
    | \w+                 # alphanumeric word (Unicode-aware)
    | [^\w\s]             # any other visible character, one token each
    """,
    re.VERBOSE | re.UNICODE,
)

_SENTENCE_FINAL = {".", "!", "?", "…"}

# Honorifics and common abbreviations whose trailing period must not end a
# sentence ("la Dra. Lopez").
_ABBREVIATIONS = {
    "dr", "dra", "dres", "sr", "sra", "srta", "prof", "profa",
    "etc", "vs", "ej", "pag", "fig", "num", "tel", "avda",
}


def tokenize(text: str, sentence_index: int = 0) -> list[Token]:
    """Split text into tokens carrying their source character offsets."""
    return [
        Token(surface=m.group(), start=m.start(), end=m.end(), sentence_index=sentence_index)
        for m in _TOKEN_RE.finditer(text)
    ]


def detokenize(text: str, tokens: list[Token]) -> str:
    """Reassemble the original text from tokens plus the gaps between them."""
    out: list[str] = []
    pos = 0
    for tok in tokens:
        out.append(text[pos:tok.start])
        out.append(tok.surface)
        pos = tok.end
    out.append(text[pos:])
    return "".join(out)


def _is_boundary(text: str, tokens: list[Token], i: int) -> bool:
    """True when a sentence boundary falls after tokens[i]."""
    tok = tokens[i]
    nxt = tokens[i + 1] if i + 1 < len(tokens) else None
    if nxt is not None and "\n" in text[tok.end:nxt.start]:
        return True
    if tok.surface in _SENTENCE_FINAL:
        if tok.surface == "." and i > 0:
            prev = tokens[i - 1]
            # A period glued to an abbreviation does not end the sentence.
            if prev.end == tok.start and prev.surface.casefold() in _ABBREVIATIONS:
                return False
        return True
    return False


def split_sentences(doc: Document) -> list[Sentence]:
    """Tokenize a document and group its tokens into sentences.

    Boundaries fall after sentence-final punctuation and at line breaks;
    every token belongs to exactly one sentence.
    """
    raw = tokenize(doc.text)
    sentences: list[Sentence] = []
    current: list[Token] = []
    for i, tok in enumerate(raw):
        current.append(tok)
        if _is_boundary(doc.text, raw, i):
            sentences.append(_make_sentence(doc.id, len(sentences), current))
            current = []
    if current:
        sentences.append(_make_sentence(doc.id, len(sentences), current))
    return sentences


def _make_sentence(doc_id: str, index: int, tokens: list[Token]) -> Sentence:
    renumbered = [
        Token(t.surface, t.start, t.end, sentence_index=index, features=t.features)
        for t in tokens
    ]
    return Sentence(tokens=renumbered, doc_id=doc_id, index=index)
