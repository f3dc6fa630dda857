"""Rule-based tagger: detectors, gazetteers, priorities, persistence."""
import pytest

from clindeid.corpus import Annotation, Document, LabelSet, gold_sentences, tokenize
from clindeid.errors import FileMissing
from clindeid.rules import (
    Gazetteer,
    RuleSet,
    build_gazetteers,
    build_rules,
    load_name_list,
    load_rules,
    match_age,
    match_date,
    match_doctor,
    match_time,
    save_rules,
    tag_rules,
)

LABELS = LabelSet()


def sentence_of(text):
    doc = Document(id="d", text=text, annotations=[])
    return gold_sentences(doc, LABELS)[0]


def doc_with(text, *spans):
    anns = [
        Annotation(f"T{i+1}", cat, start, end, text[start:end])
        for i, (cat, start, end) in enumerate(spans)
    ]
    return Document(id="d", text=text, annotations=anns)


# --- detectors ---------------------------------------------------------


def test_numeric_date_detected():
    assert match_date(["el", "12/01/2016"], 1) == (1, 2)
    assert match_date(["el", "12-01-16"], 1) == (1, 2)


def test_month_name_date_spans_extend():
    assert match_date(["22", "de", "junio"], 0) == (0, 3)
    assert match_date(["22", "de", "junio", "de", "2016"], 0) == (0, 5)
    assert match_date(["junio", "de", "2016"], 0) == (0, 3)


def test_non_dates_do_not_fire():
    assert match_date(["hernia"], 0) is None
    assert match_date(["64", "de", "lunes"], 0) is None


def test_clock_and_hour_word_times():
    assert match_time(["15:30"], 0) == (0, 1)
    assert match_time(["15:30", "horas"], 0) == (0, 2)
    assert match_time(["8", "horas"], 0) == (0, 2)
    assert match_time(["88", "horas"], 0) is None


def test_age_with_optional_qualifier():
    assert match_age(["64", "años"], 0) == (0, 2)
    assert match_age(["4", "años", "y", "medio"], 0) == (0, 4)
    assert match_age(["4", "años", "y", "medio"], 0, extended=False) == (0, 2)
    assert match_age(["64", "kilos"], 0) is None


def test_doctor_honorific_patterns():
    assert match_doctor(["Dra", "Lopez"], 0) == (0, 2)
    assert match_doctor(["Dr", ".", "Sancho"], 0) == (0, 3)
    assert match_doctor(["Dra", "Lopez"], 0, include_honorific=False) == (1, 2)
    assert match_doctor(["Dra", "dijo"], 0) is None
    assert match_doctor(["Lopez"], 0) is None


# --- gazetteers --------------------------------------------------------


def test_gazetteer_compiled_from_gold_surfaces():
    text = "Acudirá a la Clínica Marseille"
    doc = doc_with(text, ("Hospital", 13, 30))
    gaz = build_gazetteers([doc], ("Hospital",))["Hospital"]
    assert ("clínica", "marseille") in gaz.entries


def test_empty_category_yields_inert_gazetteer():
    gaz = build_gazetteers([], ("Job",))["Job"]
    assert len(gaz) == 0
    assert gaz.find_matches(["albañil"]) == []


def test_duplicate_surfaces_collapse():
    text = "Hospital Donostia y Hospital Donostia"
    doc = doc_with(text, ("Hospital", 0, 17), ("Hospital", 20, 37))
    gaz = build_gazetteers([doc], ("Hospital",))["Hospital"]
    assert len(gaz) == 1


def test_longest_match_wins():
    gaz = Gazetteer.from_phrases(["clínica", "clínica marseille"])
    assert gaz.find_matches(["clínica", "marseille"]) == [(0, 2)]


def test_name_list_round_trip(tmp_path):
    path = tmp_path / "names.txt"
    path.write_text("Ana\nLuis\nAna\n\n", encoding="utf-8")
    assert load_name_list(path) == ["Ana", "Luis"]
    with pytest.raises(FileMissing):
        load_name_list(tmp_path / "missing.txt")


def test_shipped_name_fixtures_have_two_hundred_names():
    rules = build_rules([])
    assert len(rules.name_list) == 200


# --- tagging -----------------------------------------------------------


def test_single_date_token_tagged():
    rules = RuleSet()
    assert tag_rules(sentence_of("12/01/2016"), rules) == ["B-Date"]


def test_age_in_context_tagged():
    rules = RuleSet()
    assert tag_rules(sentence_of("de 64 años"), rules) == ["O", "B-Age", "I-Age"]


def test_empty_ruleset_tags_nothing():
    assert tag_rules(sentence_of("hola mundo"), RuleSet()) == ["O", "O"]


def test_other_category_is_never_predicted():
    text = "Acudirá a la Clínica Marseille con su madre a las 15:30"
    doc = doc_with(text, ("Other", 0, 7))
    rules = build_rules([doc])
    tags = tag_rules(sentence_of(text), rules)
    assert not any(t.endswith("Other") for t in tags)


def test_priority_resolves_category_conflicts():
    # Train a Location gazetteer containing "junio"; Date has priority.
    text = "viajó a junio"
    doc = doc_with(text, ("Location", 8, 13))
    rules = build_rules([doc])
    tags = tag_rules(sentence_of("el 22 de junio viajó"), rules)
    assert tags == ["O", "B-Date", "I-Date", "I-Date", "O"]


def test_patient_names_extend_over_surnames():
    rules = build_rules([])
    tags = tag_rules(sentence_of("La paciente Ana García ingresó ayer"), rules)
    assert tags == ["O", "O", "B-Patient", "I-Patient", "O", "O"]


def test_tagging_is_deterministic_and_well_formed():
    text = "La Dra Lopez vio a Ana García el 12/01/2016 a las 15:30 en la Clínica Marseille"
    gaz_doc = doc_with(text, ("Hospital", 62, 80))
    rules = build_rules([gaz_doc])
    sent = sentence_of(text)
    first = tag_rules(sent, rules)
    assert first == tag_rules(sent, rules)
    prev = "O"
    for tag in first:
        if tag.startswith("I-"):
            assert prev.endswith(tag[2:]) and prev != "O"
        prev = tag


def test_rules_directory_round_trip(tmp_path):
    text = "Acudirá a la Clínica Marseille con su madre"
    doc = doc_with(text, ("Hospital", 13, 30), ("Kinship", 38, 43))
    rules = build_rules([doc])
    save_rules(rules, tmp_path / "rules")
    loaded = load_rules(tmp_path / "rules")
    assert loaded.gazetteers["Hospital"].entries == rules.gazetteers["Hospital"].entries
    assert loaded.name_list == rules.name_list
    sent = sentence_of(text)
    assert tag_rules(sent, loaded) == tag_rules(sent, rules)
    with pytest.raises(FileMissing):
        load_rules(tmp_path / "nope")
