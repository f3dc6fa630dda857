"""Deterministic generator of Spanish-like clinical notes with gold spans.

Stands in for private clinical data in tests and demos. Category
frequencies follow a corpus-wide quota controller, so realized shares
track the configured targets closely for any corpus of a few hundred
documents or more. Templates deliberately include the patterns that are
hard for pattern-and-dictionary tagging (spelled-out ages, weekday and
elliptical dates, bare-surname doctors, names unseen in training) so
precision/recall asymmetries are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .corpus import Annotation, Document, LabelSet
from .rules import default_name_paths, load_name_list

# Target percentage of all sensitive spans per category.
DEFAULT_FREQUENCY_TARGETS: dict[str, float] = {
    "Date": 39.0,
    "Hospital": 18.0,
    "Age": 13.0,
    "Time": 11.0,
    "Doctor": 9.0,
    "Sex": 5.0,
    "Kinship": 3.0,
    "Location": 1.0,
    "Patient": 1.0,
    "Job": 1.0,
    "Other": 1.0,
}

_MONTHS = (
    "enero", "febrero", "marzo", "abril", "mayo", "junio",
    "julio", "agosto", "septiembre", "octubre", "noviembre", "diciembre",
)
_WEEKDAYS = ("lunes", "martes", "miércoles", "jueves", "viernes", "sábado", "domingo")

_COMMON_HOSPITALS = (
    "Hospital Serrano",
    "Hospital Universitario Cruces",
    "Hospital Central",
    "Clínica Santa Maria",
    "Hospital General Arrixaca",
    "Hospital Virgen Blanca",
    "Clínica San Rafael",
    "Hospital Comarcal Duero",
)
_RARE_HOSPITALS = (
    "Clínica Marseille",
    "Hospital Saint Michel",
    "Clínica Aranzadi",
    "Hospital Montefrío",
    "Clínica Belharra",
    "Hospital Doctor Peset",
    "Clínica Guipuzcoana",
    "Hospital Río Carrión",
    "Clínica del Rosario",
    "Hospital Alto Deba",
    "Clínica Ercilla",
    "Hospital Valle Verde",
    "Clínica Ondarreta",
    "Hospital Fuente Nueva",
    "Clínica Lauaxeta",
    "Hospital Torre Blanca",
    "Clínica Mendebaldea",
    "Hospital Puerta Sur",
    "Clínica Irubide",
    "Hospital Campo Grande",
)

_SEX_TERMS = ("varón", "mujer", "hombre", "femenino", "masculino")
_KINSHIP_TERMS = (
    "madre", "padre", "hermano", "hermana", "hijo", "hija",
    "abuelo", "abuela", "esposa", "esposo", "tío", "sobrina",
)
_COMMON_LOCATIONS = ("Bilbao", "Madrid", "Barcelona", "Sevilla", "Valencia")
_RARE_LOCATIONS = (
    "Getxo", "Mungia", "Laredo", "Estella", "Tarazona", "Cuéllar",
    "Frómista", "Alcañiz", "Cascante", "Briviesca", "Sigüenza", "Trujillo",
)
_COMMON_JOBS = ("fontanero", "profesora", "carpintero", "enfermera", "conductor", "panadera")
_RARE_JOBS = (
    "apicultor", "relojera", "tornero", "vidriera", "calderero",
    "tapicera", "afilador", "hilandera", "botero", "cantera",
)
_NOVEL_FIRST_NAMES = (
    "Itziar", "Nekane", "Aitor", "Unai", "Maialen", "Oihane",
    "Gorka", "Izaro", "Ander", "Garazi", "Eneko", "Uxue",
)
_SPELLED_AGES = {
    2: "dos", 5: "cinco", 8: "ocho", 12: "doce", 17: "diecisiete",
    23: "veintitrés", 34: "treinta y cuatro", 45: "cuarenta y cinco",
    58: "cincuenta y ocho", 64: "sesenta y cuatro", 71: "setenta y uno",
    86: "ochenta y seis",
}

_FILLERS = (
    "Sin alergias medicamentosas conocidas.",
    "Evolución favorable.",
    "Se pauta amoxicilina cada 8 horas.",
    "Exploración física sin hallazgos.",
    "Analítica dentro de la normalidad.",
    "Se ajusta la pauta según tolerancia.",
    "No refiere fiebre ni dolor torácico.",
    "Pendiente de resultados.",
)

# piece = ("t", text) for plain text, ("a", surface, category) for a gold span
Piece = tuple
_Builder = Callable[[random.Random], list[Piece]]
_TEMPLATES: dict[str, dict[str, _Builder]] = {}


def _template(category: str, name: str):
    def register(fn: _Builder) -> _Builder:
        _TEMPLATES.setdefault(category, {})[name] = fn
        return fn

    return register


def _lead(rng: random.Random, options: tuple[str, ...]) -> str:
    return rng.choice(options)


def _random_date(rng: random.Random) -> tuple[int, int, int]:
    return rng.randint(1, 28), rng.randint(1, 12), rng.randint(2010, 2019)


@_template("Date", "numeric")
def _date_numeric(rng):
    d, m, y = _random_date(rng)
    surface = f"{d:02d}/{m:02d}/{y}" if rng.random() < 0.5 else f"{d}/{m}/{y}"
    lead = _lead(rng, (
        "Acude a consulta el ",
        "Intervenido el ",
        "Ingresa el ",
        "Control programado para el ",
    ))
    return [("t", lead), ("a", surface, "Date"), ("t", ".")]


@_template("Date", "dash")
def _date_dash(rng):
    d, m, y = _random_date(rng)
    surface = f"{d:02d}-{m:02d}-{y}"
    return [("t", "Última revisión: "), ("a", surface, "Date"), ("t", ".")]


@_template("Date", "textual")
def _date_textual(rng):
    d, m, y = _random_date(rng)
    surface = f"{d} de {_MONTHS[m - 1]}"
    if rng.random() < 0.6:
        surface += f" de {y}"
    lead = _lead(rng, ("Visto en urgencias el ", "Alta el ", "Citado para el "))
    return [("t", lead), ("a", surface, "Date"), ("t", ".")]


@_template("Date", "monthyear")
def _date_monthyear(rng):
    _, m, y = _random_date(rng)
    surface = f"{_MONTHS[m - 1]} de {y}"
    return [("t", "Diagnosticado en "), ("a", surface, "Date"), ("t", ".")]


@_template("Date", "weekday")
def _date_weekday(rng):
    if rng.random() < 0.3:
        return [("t", "Refiere dolor desde "), ("a", "ayer", "Date"), ("t", ".")]
    day = rng.choice(_WEEKDAYS)
    return [("t", "Acude el pasado "), ("a", day, "Date"), ("t", ".")]


@_template("Date", "elliptical")
def _date_elliptical(rng):
    d1 = rng.randint(1, 14)
    d2 = rng.randint(15, 28)
    month = rng.choice(_MONTHS)
    return [
        ("t", "Se realizaron dos sesiones ( "),
        ("a", str(d1), "Date"),
        ("t", " y "),
        ("a", f"{d2} de {month}", "Date"),
        ("t", " )."),
    ]


@_template("Age", "numeric")
def _age_numeric(rng):
    n = rng.randint(1, 95)
    unit = "años" if n != 1 else "año"
    if rng.random() < 0.12:
        n = rng.randint(2, 11)
        unit = "meses"
    lead = _lead(rng, ("Paciente de ", "Niño de ", "Lactante de "))
    return [("t", lead), ("a", f"{n} {unit}", "Age"), ("t", ".")]


@_template("Age", "half")
def _age_half(rng):
    n = rng.randint(1, 12)
    return [("t", "Paciente de "), ("a", f"{n} años y medio", "Age"), ("t", ".")]


@_template("Age", "spelled")
def _age_spelled(rng):
    words = _SPELLED_AGES[rng.choice(sorted(_SPELLED_AGES))]
    return [("t", "Paciente de "), ("a", f"{words} años", "Age"), ("t", ".")]


@_template("Time", "clock")
def _time_clock(rng):
    surface = f"{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}"
    lead = _lead(rng, ("Llega a urgencias a las ", "Avisan a las ", "Extracción a las "))
    return [("t", lead), ("a", surface, "Time"), ("t", ".")]


@_template("Time", "clock_words")
def _time_clock_words(rng):
    surface = f"{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d} horas"
    return [("t", "Inicio del cuadro a las "), ("a", surface, "Time"), ("t", ".")]


@_template("Time", "hours")
def _time_hours(rng):
    surface = f"{rng.randint(1, 24)} horas"
    return [("t", "Permanece en observación hasta las "), ("a", surface, "Time"), ("t", ".")]


def _surname(rng: random.Random) -> str:
    return rng.choice(_surname_pool())


@_template("Doctor", "honorific")
def _doctor_honorific(rng):
    honorific = rng.choice(("Dr", "Dra"))
    name = _surname(rng)
    if rng.random() < 0.3:
        name += f" {_surname(rng)}"
    surface = f"{honorific}. {name}" if rng.random() < 0.7 else f"{honorific} {name}"
    lead = _lead(rng, ("Valorado por el ", "Firmado: ", "Seguimiento por el "))
    return [("t", lead), ("a", surface, "Doctor"), ("t", ".")]


@_template("Doctor", "article")
def _doctor_article(rng):
    female = rng.random() < 0.5
    surface = f"{'la Dra' if female else 'el Dr'} {_surname(rng)}"
    return [("t", "Operado por "), ("a", surface, "Doctor"), ("t", ".")]


@_template("Doctor", "bare")
def _doctor_bare(rng):
    return [("t", "Según "), ("a", _surname(rng), "Doctor"), ("t", " no precisa cirugía.")]


@_template("Hospital", "common")
def _hospital_common(rng):
    lead = _lead(rng, ("Ingresado en el ", "Derivado al ", "Trasladado al "))
    return [("t", lead), ("a", rng.choice(_COMMON_HOSPITALS), "Hospital"), ("t", ".")]


@_template("Hospital", "rare")
def _hospital_rare(rng):
    return [("t", "Remitido desde la "), ("a", rng.choice(_RARE_HOSPITALS), "Hospital"), ("t", ".")]


@_template("Sex", "term")
def _sex_term(rng):
    lead = _lead(rng, ("Sexo: ", "Paciente "))
    return [("t", lead), ("a", rng.choice(_SEX_TERMS), "Sex"), ("t", ".")]


@_template("Kinship", "term")
def _kinship_term(rng):
    term = rng.choice(_KINSHIP_TERMS)
    lead = _lead(rng, ("Acompañado por su ", "Antecedentes: su ", "Convive con su "))
    return [("t", lead), ("a", term, "Kinship"), ("t", " refiere lo mismo.")]


@_template("Location", "common")
def _location_common(rng):
    return [("t", "Natural de "), ("a", rng.choice(_COMMON_LOCATIONS), "Location"), ("t", ".")]


@_template("Location", "rare")
def _location_rare(rng):
    return [("t", "Residente en "), ("a", rng.choice(_RARE_LOCATIONS), "Location"), ("t", ".")]


def _name_pools() -> tuple[tuple[str, ...], tuple[str, ...]]:
    global _NAME_POOLS
    if _NAME_POOLS is None:
        female_path, male_path = default_name_paths()
        _NAME_POOLS = (
            tuple(load_name_list(female_path)),
            tuple(load_name_list(male_path)),
        )
    return _NAME_POOLS


def _surname_pool() -> tuple[str, ...]:
    global _SURNAMES
    if _SURNAMES is None:
        surname_file = default_name_paths()[0].parent / "surnames.txt"
        _SURNAMES = tuple(load_name_list(surname_file))
    return _SURNAMES


_NAME_POOLS: tuple[tuple[str, ...], tuple[str, ...]] | None = None
_SURNAMES: tuple[str, ...] | None = None


@_template("Patient", "listed")
def _patient_listed(rng):
    pool = _name_pools()[rng.randint(0, 1)]
    surface = f"{rng.choice(pool)} {_surname(rng)}"
    if rng.random() < 0.4:
        surface += f" {_surname(rng)}"
    return [("t", "Paciente "), ("a", surface, "Patient"), ("t", ".")]


@_template("Patient", "novel")
def _patient_novel(rng):
    surface = f"{rng.choice(_NOVEL_FIRST_NAMES)} {_surname(rng)}"
    return [("t", "Paciente "), ("a", surface, "Patient"), ("t", ".")]


@_template("Job", "common")
def _job_common(rng):
    return [("t", "Trabaja como "), ("a", rng.choice(_COMMON_JOBS), "Job"), ("t", ".")]


@_template("Job", "rare")
def _job_rare(rng):
    return [("t", "Profesión: "), ("a", rng.choice(_RARE_JOBS), "Job"), ("t", ".")]


@_template("Other", "phone")
def _other_phone(rng):
    surface = f"6{rng.randint(10, 99)} {rng.randint(100, 999)} {rng.randint(100, 999)}"
    return [("t", "Teléfono de contacto "), ("a", surface, "Other"), ("t", ".")]


@_template("Other", "dni")
def _other_dni(rng):
    surface = f"{rng.randint(10_000_000, 99_999_999)}{rng.choice('TRWAGMYFPDXBNJZSQVHLCKE')}"
    return [("t", "DNI "), ("a", surface, "Other"), ("t", ".")]


@_template("Other", "record")
def _other_record(rng):
    return [("t", "Número de historia "), ("a", str(rng.randint(100_000, 999_999)), "Other"), ("t", ".")]


# Variant draw weights are expressed by repetition.
DEFAULT_TEMPLATE_MIX: dict[str, tuple[str, ...]] = {
    "Date": ("numeric",) * 4 + ("dash", "textual", "textual", "monthyear", "weekday", "elliptical"),
    "Age": ("numeric",) * 6 + ("half", "spelled"),
    "Time": ("clock", "clock", "clock_words", "hours"),
    "Doctor": ("honorific",) * 6 + ("article",) * 3 + ("bare",),
    "Hospital": ("common",) * 8 + ("rare",) * 2,
    "Sex": ("term",),
    "Kinship": ("term",),
    "Location": ("common",) * 3 + ("rare",) * 2,
    "Patient": ("listed",) * 4 + ("novel",),
    "Job": ("common",) * 3 + ("rare",) * 2,
    "Other": ("phone", "dni", "record"),
}


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for corpus size, mix, and reproducibility."""

    seed: int = 0
    n_documents: int = 100
    frequency_targets: Mapping[str, float] = field(
        default_factory=lambda: dict(DEFAULT_FREQUENCY_TARGETS)
    )
    templates: Mapping[str, tuple[str, ...]] = field(
        default_factory=lambda: dict(DEFAULT_TEMPLATE_MIX)
    )
    min_sentences: int = 4
    max_sentences: int = 8

    def __post_init__(self) -> None:
        if self.n_documents < 0:
            raise ValueError("n_documents must be non-negative")
        if not 0 < self.min_sentences <= self.max_sentences:
            raise ValueError("need 0 < min_sentences <= max_sentences")
        total = sum(self.frequency_targets.values())
        if not 95.0 <= total <= 105.0:
            raise ValueError(f"frequency targets must sum to about 100, got {total}")
        for category, weight in self.frequency_targets.items():
            if weight < 0:
                raise ValueError(f"negative frequency for {category}")
            if weight > 0:
                known = _TEMPLATES.get(category, {})
                for variant in self.templates.get(category, ()):
                    if variant not in known:
                        raise ValueError(f"unknown template {category}/{variant}")
                if not self.templates.get(category):
                    raise ValueError(f"no templates configured for {category}")


def _next_category(
    counts: dict[str, int],
    shares: dict[str, float],
) -> str:
    """Category with the largest quota deficit (stable order on ties)."""
    total = sum(counts.values()) + 1
    best, best_deficit = None, float("-inf")
    for category, share in shares.items():
        deficit = share * total - counts[category]
        if deficit > best_deficit:
            best, best_deficit = category, deficit
    assert best is not None
    return best


def _generate_document(
    doc_id: str,
    rng: random.Random,
    counts: dict[str, int],
    shares: dict[str, float],
    config: GeneratorConfig,
) -> Document:
    parts: list[str] = []
    annotations: list[Annotation] = []
    position = 0

    def emit_text(text: str) -> None:
        nonlocal position
        parts.append(text)
        position += len(text)

    def emit_span(surface: str, category: str) -> None:
        nonlocal position
        annotations.append(
            Annotation(
                id=f"T{len(annotations) + 1}",
                category=category,
                start=position,
                end=position + len(surface),
                surface=surface,
            )
        )
        emit_text(surface)

    n_sentences = rng.randint(config.min_sentences, config.max_sentences)
    first = True
    for _ in range(n_sentences):
        if not first:
            emit_text(" " if rng.random() < 0.7 else "\n")
        first = False
        category = _next_category(counts, shares)
        variant = rng.choice(config.templates[category])
        for piece in _TEMPLATES[category][variant](rng):
            if piece[0] == "t":
                emit_text(piece[1])
            else:
                _, surface, piece_cat = piece
                emit_span(surface, piece_cat)
                counts[piece_cat] += 1
        if rng.random() < 0.25:
            emit_text(" " if rng.random() < 0.7 else "\n")
            emit_text(rng.choice(_FILLERS))
    emit_text("\n")
    return Document(id=doc_id, text="".join(parts), annotations=annotations)


def generate(config: GeneratorConfig) -> list[Document]:
    """Produce the corpus; same config (incl. seed) → identical documents."""
    rng = random.Random(config.seed)
    shares = {
        category: weight / sum(config.frequency_targets.values())
        for category, weight in config.frequency_targets.items()
        if weight > 0
    }
    counts = {category: 0 for category in shares}
    labels = LabelSet(categories=tuple(config.frequency_targets))
    documents = []
    for i in range(config.n_documents):
        doc = _generate_document(f"synth-{i:05d}", rng, counts, shares, config)
        doc.validate(labels)
        documents.append(doc)
    return documents


def category_shares(documents: list[Document]) -> dict[str, float]:
    """Realized percentage of annotations per category."""
    counts: dict[str, int] = {}
    for doc in documents:
        for ann in doc.annotations:
            counts[ann.category] = counts.get(ann.category, 0) + 1
    total = sum(counts.values())
    if total == 0:
        return {}
    return {category: 100.0 * n / total for category, n in sorted(counts.items())}
