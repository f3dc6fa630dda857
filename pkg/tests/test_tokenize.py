"""Tokenizer offsets, reconstruction property, sentence splitting."""
from hypothesis import given
from hypothesis import strategies as st

from clindeid.corpus import Document, detokenize, split_sentences, tokenize


def surfaces(text):
    return [t.surface for t in tokenize(text)]


def test_clinical_phrase_tokenization():
    assert surfaces("operado el 12/01/2016 por la Dra Lopez") == [
        "operado", "el", "12/01/2016", "por", "la", "Dra", "Lopez",
    ]


def test_empty_text_gives_no_tokens():
    assert tokenize("") == []


def test_parenthesized_date_range_is_eight_tokens():
    assert surfaces("control ( 15 y 22 de junio )") == [
        "control", "(", "15", "y", "22", "de", "junio", ")",
    ]


def test_times_and_dashed_dates_stay_whole():
    assert surfaces("a las 15:30 del 12-01-2016") == [
        "a", "las", "15:30", "del", "12-01-2016",
    ]


def test_punctuation_splits_from_words():
    assert surfaces("estable, sin fiebre.") == ["estable", ",", "sin", "fiebre", "."]


def test_offsets_point_into_text():
    text = "El niño: 3 años."
    for tok in tokenize(text):
        assert text[tok.start:tok.end] == tok.surface


@given(st.text(max_size=200))
def test_detokenize_reconstructs_any_text(text):
    assert detokenize(text, tokenize(text)) == text


def test_two_lines_are_two_sentences():
    doc = Document(id="d", text="sin fiebre\nsin dolor", annotations=[])
    assert len(split_sentences(doc)) == 2


def test_terminators_split_sentences():
    doc = Document(id="d", text="Paciente estable. Alta mañana.", annotations=[])
    sents = split_sentences(doc)
    assert [len(s.tokens) for s in sents] == [3, 3]
    assert [t.surface for t in sents[1].tokens] == ["Alta", "mañana", "."]


def test_text_without_terminators_is_one_sentence():
    doc = Document(id="d", text="paciente estable sin cambios", annotations=[])
    assert len(split_sentences(doc)) == 1


def test_honorific_period_does_not_end_sentence():
    doc = Document(id="d", text="Visto por la Dra. Lopez hoy. Estable.", annotations=[])
    sents = split_sentences(doc)
    assert len(sents) == 2
    assert sents[0].tokens[-1].surface == "."
    assert sents[1].tokens[0].surface == "Estable"


def test_every_token_lands_in_exactly_one_sentence():
    doc = Document(id="d", text="Uno. Dos! Tres?\nCuatro", annotations=[])
    sents = split_sentences(doc)
    total = [t.surface for s in sents for t in s.tokens]
    assert total == [t.surface for t in tokenize(doc.text)]
    for s in sents:
        assert all(t.sentence_index == s.index for t in s.tokens)
