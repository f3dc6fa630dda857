"""BIO encoding/decoding and the round-trip invariant."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clindeid.corpus import (
    Annotation,
    Document,
    LabelSet,
    decode_bio,
    encode_bio,
    gold_sentences,
    tokenize,
)
from clindeid.errors import (
    IllFormedSequence,
    LengthMismatch,
    OverlapError,
    UnknownLabel,
)

LABELS = LabelSet()


def ann(category, start, end, text, i=1):
    return Annotation(f"T{i}", category, start, end, text[start:end])


def test_hospital_span_encodes_b_then_i():
    text = "Acudirá a la Clínica Marseille"
    toks = tokenize(text)
    spans = [ann("Hospital", 10, 30, text)]
    assert encode_bio(toks, spans, LABELS) == [
        "O", "O", "B-Hospital", "I-Hospital", "I-Hospital",
    ]


def test_no_annotations_is_all_o():
    toks = tokenize("sin datos personales")
    assert encode_bio(toks, [], LABELS) == ["O", "O", "O"]


def test_adjacent_spans_each_get_their_own_b():
    text = "15 y 22 de junio"
    toks = tokenize(text)
    spans = [ann("Date", 0, 2, text, 1), ann("Date", 5, 16, text, 2)]
    assert encode_bio(toks, spans, LABELS) == [
        "B-Date", "O", "B-Date", "I-Date", "I-Date",
    ]


def test_mid_token_boundaries_snap_outward():
    text = "Paciente de 64 años"
    toks = tokenize(text)
    # Span [13, 17) starts inside "64" and ends inside "años".
    spans = [Annotation("T1", "Age", 13, 17, text[13:17])]
    assert encode_bio(toks, spans, LABELS) == ["O", "O", "B-Age", "I-Age"]


def test_two_annotations_on_one_token_is_an_error():
    text = "12/01/2016"
    toks = tokenize(text)
    spans = [
        Annotation("T1", "Date", 0, 2, "12"),
        Annotation("T2", "Time", 3, 5, "01"),
    ]
    with pytest.raises(OverlapError):
        encode_bio(toks, spans, LABELS)


def test_unknown_category_is_rejected():
    text = "64 años"
    with pytest.raises(UnknownLabel):
        encode_bio(tokenize(text), [Annotation("T1", "Spaceship", 0, 2, "64")], LABELS)


def test_decode_maximal_runs():
    text = "Acudirá a la Clínica Marseille"
    toks = tokenize(text)
    tags = ["O", "O", "B-Hospital", "B-Hospital", "I-Hospital"]
    out = decode_bio(text, toks, tags, LABELS)
    assert [(a.surface, a.category) for a in out] == [
        ("la", "Hospital"),
        ("Clínica Marseille", "Hospital"),
    ]


def test_decode_all_o_is_empty():
    text = "sin datos"
    assert decode_bio(text, tokenize(text), ["O", "O"], LABELS) == []


def test_dangling_i_repaired_or_rejected():
    text = "12/01/2016"
    toks = tokenize(text)
    out = decode_bio(text, toks, ["I-Date"], LABELS, repair="i-as-b")
    assert [(a.category, a.start, a.end) for a in out] == [("Date", 0, 10)]
    with pytest.raises(IllFormedSequence):
        decode_bio(text, toks, ["I-Date"], LABELS, repair="strict")


def test_category_switch_inside_run_starts_new_span():
    text = "Dra Lopez 12/01/2016"
    toks = tokenize(text)
    tags = ["B-Doctor", "I-Doctor", "I-Date"]
    out = decode_bio(text, toks, tags, LABELS, repair="i-as-b")
    assert [(a.surface, a.category) for a in out] == [
        ("Dra Lopez", "Doctor"),
        ("12/01/2016", "Date"),
    ]


def test_decode_rejects_unknown_tags_and_length_mismatch():
    text = "sin datos"
    toks = tokenize(text)
    with pytest.raises(UnknownLabel):
        decode_bio(text, toks, ["O", "B-Spaceship"], LABELS)
    with pytest.raises(LengthMismatch):
        decode_bio(text, toks, ["O"], LABELS)
    with pytest.raises(ValueError):
        decode_bio(text, toks, ["O", "O"], LABELS, repair="fancy")


def test_encoded_tags_stay_inside_the_alphabet():
    text = "Paciente de 64 años operado el 12/01/2016 por la Dra Lopez"
    doc = Document(
        id="d",
        text=text,
        annotations=[
            ann("Age", 12, 19, text, 1),
            ann("Date", 31, 41, text, 2),
            ann("Doctor", 49, 58, text, 3),
        ],
    )
    alphabet = set(LABELS.bio_labels())
    for sent in gold_sentences(doc, LABELS):
        assert set(sent.gold) <= alphabet


WORDS = st.lists(
    st.sampled_from("paciente acude hospital madrid lunes fiebre dolor alta".split()),
    min_size=1,
    max_size=12,
)


@st.composite
def documents_with_token_aligned_spans(draw):
    words = draw(WORDS)
    text = " ".join(words)
    toks = tokenize(text)
    n = len(toks)
    spans = []
    used = set()
    for i in range(draw(st.integers(0, 3))):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(a, min(a + 2, n - 1)))
        if used & set(range(a, b + 1)):
            continue
        used.update(range(a, b + 1))
        cat = draw(st.sampled_from(LABELS.categories))
        spans.append(
            Annotation(f"T{i+1}", cat, toks[a].start, toks[b].end, text[toks[a].start:toks[b].end])
        )
    return Document(id="d", text=text, annotations=sorted(spans, key=lambda s: s.start))


@given(documents_with_token_aligned_spans())
def test_round_trip_recovers_token_aligned_spans(doc):
    toks = tokenize(doc.text)
    tags = encode_bio(toks, doc.annotations, LABELS)
    back = decode_bio(doc.text, toks, tags, LABELS)
    assert [(a.category, a.start, a.end, a.surface) for a in back] == [
        (a.category, a.start, a.end, a.surface) for a in doc.annotations
    ]
