"""Render de-identified text in three styles: mask, placeholder, surrogate.

Mask replaces every sensitive character and is exactly length-preserving.
Placeholder writes a bracketed category tag, stretched with dashes to the
span length when it fits. Surrogate substitutes a fake value of the same
category and written format: dates shift by a per-document constant so
intervals inside one document survive, ages shift by a bounded number of
years, people keep their article/honorific structure, and dictionary
categories resample from a same-category pool. A side table (output
coordinates) makes every mode reversible.
"""
from __future__ import annotations

import re
import random
from dataclasses import dataclass, field, replace
from datetime import date, timedelta

from .corpus import Annotation, Document
from .errors import OffsetOutOfRange, OverlapError, UnknownCategory
from .rules.tagger import default_name_paths
from .rules.gazetteer import load_name_list

MODES = ("mask", "placeholder", "surrogate")

# Categories with a dedicated surrogate generator (as opposed to pool
# resampling or the placeholder fallback).
_VALUE_CATEGORIES = ("Date", "Age", "Time", "Doctor", "Patient")
_POOL_CATEGORIES = ("Hospital", "Sex", "Kinship", "Location", "Job")

_MONTH_NAMES = (
    "enero", "febrero", "marzo", "abril", "mayo", "junio",
    "julio", "agosto", "septiembre", "octubre", "noviembre", "diciembre",
)
_MONTH_NUMBER = {name: i + 1 for i, name in enumerate(_MONTH_NAMES)}
_MONTH_NUMBER["setiembre"] = 9
_WEEKDAYS = ("lunes", "martes", "miércoles", "jueves", "viernes", "sábado", "domingo")

_NUMERIC_DATE = re.compile(r"^(\d{1,2})([/-])(\d{1,2})\2(\d{2,4})$")
_TEXTUAL_DATE = re.compile(r"^(\d{1,2}) de ([a-záéíóúü]+)(?: de (\d{4}))?$")
_MONTH_YEAR = re.compile(r"^([a-záéíóúü]+) de (\d{4})$")
_AGE = re.compile(r"^(\d{1,3})( .+)$")
_CLOCK = re.compile(r"^(\d{1,2}):(\d{2})( horas| h)?$")
_PLAIN_HOURS = re.compile(r"^(\d{1,2}) (horas|h)$")
_PERSON = re.compile(
    r"^(?P<article>[Ee]l |[Ll]a )?"
    r"(?:(?P<honorific>Dres|Dra|Dr|[Dd]octora|[Dd]octor)(?P<dot>\. | ))?"
    r"(?P<names>.+)$"
)


@dataclass(frozen=True)
class AnonymisationPolicy:
    """How spans are rewritten; all randomness flows from surrogate_seed."""

    mode: str = "mask"
    mask_char: str = "X"
    placeholder_format: str = "[--{CAT}--]"
    surrogate_seed: int = 0
    date_shift_days: tuple[int, int] = (-365, 365)
    age_shift_years: tuple[int, int] = (-5, 5)
    surrogate_pools: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if len(self.mask_char) != 1:
            raise ValueError("mask_char must be a single character")
        if "{CAT}" not in self.placeholder_format:
            raise ValueError("placeholder_format needs a {CAT} slot")
        for lo, hi in (self.date_shift_days, self.age_shift_years):
            if lo > hi:
                raise ValueError("shift ranges must satisfy lo <= hi")


@dataclass(frozen=True)
class MappingEntry:
    """One rewritten span, locatable in the *output* text."""

    id: str
    category: str
    start: int
    end: int
    replacement: str
    original: str


def render_placeholder(category: str, width: int, fmt: str = "[--{CAT}--]") -> str:
    """Bracketed tag padded with dashes to `width` when it fits."""
    prefix, suffix = fmt.split("{CAT}", 1)
    pad = prefix[-1] if prefix and prefix[-1] == suffix[:1] else "-"
    left_core = prefix.rstrip(pad)
    right_core = suffix.lstrip(pad)
    tag = category.upper()
    stretch = width - len(left_core) - len(right_core) - len(tag)
    left = max(1, stretch // 2)
    right = max(1, stretch - left)
    return f"{left_core}{pad * left}{tag}{pad * right}{right_core}"


def _doc_rng(policy: AnonymisationPolicy, doc_id: str, *scope: object) -> random.Random:
    key = ":".join([str(policy.surrogate_seed), doc_id, *map(str, scope)])
    return random.Random(key)


def _document_day_shift(policy: AnonymisationPolicy, doc_id: str) -> int:
    lo, hi = policy.date_shift_days
    return _doc_rng(policy, doc_id, "date").randint(lo, hi)


def _month_number(name: str) -> int | None:
    return _MONTH_NUMBER.get(name.casefold())


def _pad(value: int, width: int) -> str:
    return str(value).zfill(width)


def _shift_year_2digit(year_text: str) -> int:
    value = int(year_text)
    if len(year_text) == 2:
        return 2000 + value if value < 70 else 1900 + value
    return value


def _render_year(year: int, width: int) -> str:
    return _pad(year % 100, 2) if width == 2 else str(year)


def _date_surrogate(surface: str, shift_days: int) -> str | None:
    m = _NUMERIC_DATE.match(surface)
    if m:
        day_t, sep, month_t, year_t = m.groups()
        try:
            shifted = date(_shift_year_2digit(year_t), int(month_t), int(day_t)) + timedelta(days=shift_days)
        except ValueError:
            return None
        return (
            f"{_pad(shifted.day, len(day_t))}{sep}"
            f"{_pad(shifted.month, len(month_t))}{sep}"
            f"{_render_year(shifted.year, len(year_t))}"
        )
    m = _TEXTUAL_DATE.match(surface)
    if m:
        day_t, month_name, year_t = m.groups()
        month = _month_number(month_name)
        if month is None:
            return None
        year = int(year_t) if year_t else 2015  # anchor for year-less dates
        try:
            shifted = date(year, month, int(day_t)) + timedelta(days=shift_days)
        except ValueError:
            return None
        out = f"{_pad(shifted.day, len(day_t))} de {_MONTH_NAMES[shifted.month - 1]}"
        if year_t:
            out += f" de {shifted.year}"
        return out
    m = _MONTH_YEAR.match(surface)
    if m:
        month_name, year_t = m.groups()
        month = _month_number(month_name)
        if month is None:
            return None
        shifted = date(int(year_t), month, 15) + timedelta(days=shift_days)
        return f"{_MONTH_NAMES[shifted.month - 1]} de {shifted.year}"
    folded = surface.casefold()
    if folded in _WEEKDAYS:
        rotated = _WEEKDAYS[(_WEEKDAYS.index(folded) + shift_days) % 7]
        return rotated.capitalize() if surface[0].isupper() else rotated
    return None


def _time_surrogate(surface: str, shift_minutes: int) -> str | None:
    m = _CLOCK.match(surface)
    if m:
        hour_t, minute_t, unit = m.groups()
        total = (int(hour_t) * 60 + int(minute_t) + shift_minutes) % (24 * 60)
        return f"{_pad(total // 60, len(hour_t))}:{_pad(total % 60, len(minute_t))}{unit or ''}"
    m = _PLAIN_HOURS.match(surface)
    if m:
        hours, unit = m.groups()
        shifted = (int(hours) - 1 + shift_minutes) % 24 + 1  # stay in 1..24
        return f"{shifted} {unit}"
    return None


def _age_surrogate(surface: str, rng: random.Random, policy: AnonymisationPolicy) -> str | None:
    m = _AGE.match(surface)
    if not m:
        return None
    value_t, rest = m.groups()
    lo, hi = policy.age_shift_years
    shifted = max(0, int(value_t) + rng.randint(lo, hi))
    return f"{shifted}{rest}"


def _sample_different(pool: tuple[str, ...], original: str, rng: random.Random) -> str:
    if not pool:
        return original
    pick = rng.randrange(len(pool))
    if pool[pick] == original and len(pool) > 1:
        pick = (pick + 1) % len(pool)
    return pool[pick]


def _name_pools() -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
    global _NAMES
    if _NAMES is None:
        female_path, male_path = default_name_paths()
        surname_path = female_path.parent / "surnames.txt"
        _NAMES = (
            tuple(load_name_list(female_path)),
            tuple(load_name_list(male_path)),
            tuple(load_name_list(surname_path)),
        )
    return _NAMES


_NAMES: tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]] | None = None


def _person_surrogate(surface: str, category: str, rng: random.Random) -> str | None:
    m = _PERSON.match(surface)
    if m is None:
        return None
    female_names, male_names, surnames = _name_pools()
    article = m.group("article") or ""
    honorific = m.group("honorific") or ""
    dot = m.group("dot") or ""
    name_tokens = m.group("names").split(" ")
    if honorific:
        female = honorific.casefold() in ("dra", "doctora")
    elif article:
        female = article.casefold().strip() == "la"
    elif name_tokens[0] in female_names:
        female = True
    elif name_tokens[0] in male_names:
        female = False
    else:
        female = rng.random() < 0.5
    if category == "Doctor":
        new_names = [_sample_different(surnames, t, rng) for t in name_tokens]
    else:
        first_pool = female_names if female else male_names
        new_names = [_sample_different(first_pool, name_tokens[0], rng)]
        new_names += [_sample_different(surnames, t, rng) for t in name_tokens[1:]]
    return f"{article}{honorific}{dot}{' '.join(new_names)}"


def surrogate(
    annotation: Annotation,
    policy: AnonymisationPolicy,
    doc_id: str = "",
) -> str:
    """Fake value of the same category and written format.

    Falls back to a placeholder when the surface does not parse (e.g.
    spelled-out ages, relative dates) and for the residual category.
    """
    category = annotation.category
    surface = annotation.surface
    known = set(_VALUE_CATEGORIES) | set(_POOL_CATEGORIES) | {"Other"} | set(policy.surrogate_pools)
    if category not in known:
        raise UnknownCategory(f"no surrogate strategy for category {category!r}")

    rng = _doc_rng(policy, doc_id, category, annotation.start)
    result: str | None = None
    if category in policy.surrogate_pools:
        result = _sample_different(tuple(policy.surrogate_pools[category]), surface, rng)
    elif category == "Date":
        result = _date_surrogate(surface, _document_day_shift(policy, doc_id))
    elif category == "Time":
        result = _time_surrogate(surface, _document_day_shift(policy, doc_id))
    elif category == "Age":
        result = _age_surrogate(surface, rng, policy)
    elif category in ("Doctor", "Patient"):
        result = _person_surrogate(surface, category, rng)
    if result is None:
        result = render_placeholder(category, len(surface), policy.placeholder_format)
    return result


def _check_spans(doc: Document, annotations: list[Annotation]) -> list[Annotation]:
    ordered = sorted(annotations, key=lambda a: (a.start, a.end))
    previous_end = -1
    for ann in ordered:
        if not 0 <= ann.start < ann.end <= len(doc.text):
            raise OffsetOutOfRange(
                f"{ann.id}: [{ann.start}, {ann.end}) outside document of length {len(doc.text)}"
            )
        if ann.start < previous_end:
            raise OverlapError(f"{ann.id} overlaps a preceding annotation")
        previous_end = ann.end
    return ordered


def anonymise_with_mapping(
    doc: Document,
    annotations: list[Annotation],
    policy: AnonymisationPolicy,
) -> tuple[str, list[MappingEntry]]:
    """De-identified text plus the side table locating each replacement."""
    ordered = _check_spans(doc, annotations)

    replacements: list[tuple[Annotation, str]] = []
    for ann in ordered:
        original = doc.text[ann.start:ann.end]
        ann = replace(ann, surface=original)
        if policy.mode == "mask":
            new = policy.mask_char * len(original)
        elif policy.mode == "placeholder":
            new = render_placeholder(ann.category, len(original), policy.placeholder_format)
        else:
            new = surrogate(ann, policy, doc_id=doc.id)
        replacements.append((ann, new))

    # Splice right-to-left so pending earlier offsets stay valid.
    text = doc.text
    for ann, new in reversed(replacements):
        text = text[:ann.start] + new + text[ann.end:]

    mapping: list[MappingEntry] = []
    delta = 0
    for ann, new in replacements:
        out_start = ann.start + delta
        mapping.append(
            MappingEntry(
                id=ann.id,
                category=ann.category,
                start=out_start,
                end=out_start + len(new),
                replacement=new,
                original=ann.surface,
            )
        )
        delta += len(new) - (ann.end - ann.start)
    return text, mapping


def anonymise(
    doc: Document,
    annotations: list[Annotation],
    policy: AnonymisationPolicy,
) -> str:
    """De-identified text only; see anonymise_with_mapping for the table."""
    return anonymise_with_mapping(doc, annotations, policy)[0]


def restore(text: str, mapping: list[MappingEntry]) -> str:
    """Invert an anonymisation using its side table."""
    for entry in sorted(mapping, key=lambda e: e.start, reverse=True):
        if text[entry.start:entry.end] != entry.replacement:
            raise OffsetOutOfRange(
                f"{entry.id}: text at [{entry.start}, {entry.end}) does not match the side table"
            )
        text = text[:entry.start] + entry.original + text[entry.end:]
    return text


def scan_for_leaks(output: str, originals: list[str]) -> list[str]:
    """Original sensitive surfaces that still occur verbatim in the output."""
    return sorted({s for s in originals if s and s in output})


def build_surrogate_pools(
    documents: list[Document],
    categories: tuple[str, ...] = _POOL_CATEGORIES,
) -> dict[str, tuple[str, ...]]:
    """Same-category replacement pools drawn from a reference corpus."""
    pools: dict[str, list[str]] = {category: [] for category in categories}
    for doc in documents:
        for ann in doc.annotations:
            if ann.category in pools and ann.surface not in pools[ann.category]:
                pools[ann.category].append(ann.surface)
    return {category: tuple(sorted(values)) for category, values in pools.items()}
