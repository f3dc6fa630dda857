"""Three rendering styles, calendar arithmetic, reversibility, leak scan."""
from datetime import date, timedelta

import pytest

from clindeid.anonymise import (
    AnonymisationPolicy,
    MappingEntry,
    anonymise,
    anonymise_with_mapping,
    build_surrogate_pools,
    render_placeholder,
    restore,
    scan_for_leaks,
    surrogate,
)
from clindeid.corpus import Annotation, Document
from clindeid.errors import OffsetOutOfRange, OverlapError, UnknownCategory
from clindeid.rules.detectors import match_age, match_date, match_time

SENTENCE = "Paciente de 64 años operado de una hernia el 12/01/2016 por la Dra Lopez"


def _example_doc() -> tuple[Document, list[Annotation]]:
    anns = [
        Annotation("T1", "Age", 12, 19, SENTENCE[12:19]),
        Annotation("T2", "Date", 45, 55, SENTENCE[45:55]),
        Annotation("T3", "Doctor", 60, 72, SENTENCE[60:72]),
    ]
    assert [a.surface for a in anns] == ["64 años", "12/01/2016", "la Dra Lopez"]
    return Document(id="example", text=SENTENCE, annotations=anns), anns


def test_mask_rendering_preserves_lengths_seven_ten_twelve():
    doc, anns = _example_doc()
    out = anonymise(doc, anns, AnonymisationPolicy(mode="mask"))
    assert out == (
        "Paciente de XXXXXXX operado de una hernia el XXXXXXXXXX por XXXXXXXXXXXX"
    )
    assert len(out) == len(SENTENCE)


def test_placeholder_rendering_uses_canonical_tags():
    doc, anns = _example_doc()
    out = anonymise(doc, anns, AnonymisationPolicy(mode="placeholder"))
    assert out == (
        "Paciente de [-AGE-] operado de una hernia el [--DATE--] por [--DOCTOR--]"
    )
    assert len(out) == len(SENTENCE)


def test_placeholder_padding_is_symmetric_and_min_one_dash():
    assert render_placeholder("Age", 7) == "[-AGE-]"
    assert render_placeholder("Date", 10) == "[--DATE--]"
    assert render_placeholder("Doctor", 12) == "[--DOCTOR--]"
    assert render_placeholder("Date", 11) == "[--DATE---]"
    # too narrow to preserve length: fall back to one dash per side
    assert render_placeholder("Hospital", 4) == "[-HOSPITAL-]"


def test_surrogate_age_shift_minus_five_gives_table_pair():
    policy = AnonymisationPolicy(mode="surrogate", age_shift_years=(-5, -5))
    out = surrogate(Annotation("T1", "Age", 12, 19, "64 años"), policy, doc_id="example")
    assert out == "59 años"


def test_surrogate_date_shift_matches_calendar_arithmetic():
    policy = AnonymisationPolicy(mode="surrogate", date_shift_days=(146, 146))
    out = surrogate(Annotation("T1", "Date", 0, 10, "12/01/2016"), policy, doc_id="d")
    assert out == (date(2016, 1, 12) + timedelta(days=146)).strftime("%d/%m/%Y")
    assert out == "06/06/2016"


def test_surrogate_zero_shift_is_identity_for_dates():
    policy = AnonymisationPolicy(mode="surrogate", date_shift_days=(0, 0))
    ann = Annotation("T1", "Date", 0, 10, "12/01/2016")
    assert surrogate(ann, policy, doc_id="d") == "12/01/2016"


def test_surrogate_date_preserves_written_format():
    policy = AnonymisationPolicy(mode="surrogate", date_shift_days=(40, 40))
    cases = {
        "12/01/2016": "21/02/2016",
        "12-01-2016": "21-02-2016",
        "3/1/2016": "12/2/2016",           # unpadded stays unpadded
        "3 de enero de 2016": "12 de febrero de 2016",
        "enero de 2016": "febrero de 2016",  # mid-month anchor
    }
    for original, expected in cases.items():
        ann = Annotation("T1", "Date", 0, len(original), original)
        assert surrogate(ann, policy, doc_id="d") == expected


def test_surrogate_dates_share_one_shift_per_document():
    policy = AnonymisationPolicy(mode="surrogate", date_shift_days=(-300, 300))
    a = surrogate(Annotation("T1", "Date", 0, 10, "10/03/2015"), policy, doc_id="doc-a")
    b = surrogate(Annotation("T2", "Date", 50, 60, "20/03/2015"), policy, doc_id="doc-a")
    delta_a = date(*reversed([int(x) for x in a.split("/")])) - date(2015, 3, 10)
    delta_b = date(*reversed([int(x) for x in b.split("/")])) - date(2015, 3, 20)
    assert delta_a == delta_b
    other = surrogate(Annotation("T1", "Date", 0, 10, "10/03/2015"), policy, doc_id="doc-b")
    assert other != a  # independent documents draw independent shifts


def test_surrogate_self_consistency_under_detectors():
    policy = AnonymisationPolicy(mode="surrogate", surrogate_seed=5)
    date_out = surrogate(Annotation("T1", "Date", 0, 10, "28/02/2017"), policy, doc_id="d")
    assert match_date(date_out.split(" "), 0) is not None
    age_out = surrogate(Annotation("T2", "Age", 0, 7, "64 años"), policy, doc_id="d")
    assert match_age(age_out.split(" "), 0) is not None
    time_out = surrogate(Annotation("T3", "Time", 0, 5, "08:30"), policy, doc_id="d")
    assert match_time(time_out.split(" "), 0) is not None
    hours_out = surrogate(Annotation("T4", "Time", 0, 8, "15 horas"), policy, doc_id="d")
    assert match_time(hours_out.split(" "), 0) is not None


def test_surrogate_doctor_keeps_article_and_honorific_structure():
    policy = AnonymisationPolicy(mode="surrogate", surrogate_seed=3)
    out = surrogate(Annotation("T1", "Doctor", 0, 12, "la Dra Lopez"), policy, doc_id="d")
    assert out.startswith("la Dra ")
    assert out != "la Dra Lopez"
    assert len(out.split(" ")) == 3
    dotted = surrogate(Annotation("T2", "Doctor", 0, 8, "Dr. Ruiz"), policy, doc_id="d")
    assert dotted.startswith("Dr. ")


def test_surrogate_patient_swaps_name_from_same_gender_pool():
    policy = AnonymisationPolicy(mode="surrogate", surrogate_seed=11)
    out = surrogate(
        Annotation("T1", "Patient", 0, 11, "Jorge Ruiz"), policy, doc_id="d"
    )
    first, *rest = out.split(" ")
    assert first != "Jorge" and rest
    from clindeid.rules import default_name_paths, load_name_list

    male = load_name_list(default_name_paths()[1])
    assert first in male


def test_surrogate_pool_categories_resample_without_identity():
    policy = AnonymisationPolicy(
        mode="surrogate",
        surrogate_pools={"Hospital": ("Hospital Serrano", "Hospital Central")},
    )
    ann = Annotation("T1", "Hospital", 0, 16, "Hospital Serrano")
    assert surrogate(ann, policy, doc_id="d") == "Hospital Central"


def test_surrogate_unparseable_value_falls_back_to_placeholder():
    policy = AnonymisationPolicy(mode="surrogate")
    spelled = Annotation("T1", "Age", 0, 21, "sesenta y cuatro años")
    assert surrogate(spelled, policy, doc_id="d") == render_placeholder("Age", 21)
    other = Annotation("T2", "Other", 0, 11, "611 222 333")
    assert surrogate(other, policy, doc_id="d") == render_placeholder("Other", 11)
    hospital_without_pool = Annotation("T3", "Hospital", 0, 16, "Hospital Serrano")
    assert surrogate(hospital_without_pool, policy, doc_id="d") == render_placeholder(
        "Hospital", 16
    )


def test_surrogate_unknown_category_rejected():
    with pytest.raises(UnknownCategory):
        surrogate(
            Annotation("T1", "FECHAS", 0, 4, "2016"),
            AnonymisationPolicy(mode="surrogate"),
            doc_id="d",
        )


def test_zero_annotations_returns_input_unchanged():
    doc, _ = _example_doc()
    for mode in ("mask", "placeholder", "surrogate"):
        assert anonymise(doc, [], AnonymisationPolicy(mode=mode)) == SENTENCE


def test_non_sensitive_text_is_byte_identical():
    doc, anns = _example_doc()
    out, mapping = anonymise_with_mapping(doc, anns, AnonymisationPolicy(mode="surrogate"))
    cursor_in = cursor_out = 0
    for ann, entry in zip(sorted(anns, key=lambda a: a.start), mapping):
        assert SENTENCE[cursor_in:ann.start] == out[cursor_out:entry.start]
        cursor_in, cursor_out = ann.end, entry.end
    assert SENTENCE[cursor_in:] == out[cursor_out:]


def test_mapping_restores_original_in_every_mode():
    doc, anns = _example_doc()
    for mode in ("mask", "placeholder", "surrogate"):
        out, mapping = anonymise_with_mapping(doc, anns, AnonymisationPolicy(mode=mode))
        assert restore(out, mapping) == SENTENCE


def test_restore_rejects_tampered_text():
    doc, anns = _example_doc()
    out, mapping = anonymise_with_mapping(doc, anns, AnonymisationPolicy(mode="mask"))
    with pytest.raises(OffsetOutOfRange):
        restore(out[:-1] + "?", mapping)


def test_surrogate_determinism_and_seed_sensitivity():
    doc, anns = _example_doc()
    policy = AnonymisationPolicy(mode="surrogate", surrogate_seed=42)
    assert anonymise(doc, anns, policy) == anonymise(doc, anns, policy)
    reseeded = AnonymisationPolicy(mode="surrogate", surrogate_seed=43)
    assert anonymise(doc, anns, policy) != anonymise(doc, anns, reseeded)


def test_overlap_and_bounds_errors():
    doc, anns = _example_doc()
    overlapping = anns + [Annotation("T9", "Age", 14, 21, SENTENCE[14:21])]
    with pytest.raises(OverlapError):
        anonymise(doc, overlapping, AnonymisationPolicy(mode="mask"))
    beyond = [Annotation("T9", "Age", 70, 99, "x")]
    with pytest.raises(OffsetOutOfRange):
        anonymise(doc, beyond, AnonymisationPolicy(mode="mask"))


def test_leak_scan_on_masked_and_placeholder_output():
    doc, anns = _example_doc()
    originals = [SENTENCE[a.start:a.end] for a in anns]
    for mode in ("mask", "placeholder"):
        out = anonymise(doc, anns, AnonymisationPolicy(mode=mode))
        assert scan_for_leaks(out, originals) == []
    assert scan_for_leaks(SENTENCE, originals) == sorted(originals)


def test_build_surrogate_pools_collects_sorted_unique_surfaces():
    doc_a = Document(
        id="a",
        text="En Hospital Serrano.",
        annotations=[Annotation("T1", "Hospital", 3, 19, "Hospital Serrano")],
    )
    doc_b = Document(
        id="b",
        text="En Hospital Central y Hospital Serrano.",
        annotations=[
            Annotation("T1", "Hospital", 3, 19, "Hospital Central"),
            Annotation("T2", "Hospital", 22, 38, "Hospital Serrano"),
        ],
    )
    pools = build_surrogate_pools([doc_a, doc_b])
    assert pools["Hospital"] == ("Hospital Central", "Hospital Serrano")
    assert pools["Sex"] == ()


def test_policy_validation():
    with pytest.raises(ValueError):
        AnonymisationPolicy(mode="redact")
    with pytest.raises(ValueError):
        AnonymisationPolicy(mask_char="XX")
    with pytest.raises(ValueError):
        AnonymisationPolicy(placeholder_format="[---]")
    with pytest.raises(ValueError):
        AnonymisationPolicy(date_shift_days=(5, 1))
