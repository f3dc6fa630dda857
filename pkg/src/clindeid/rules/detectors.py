"""Regex detectors for the four pattern-driven categories.

Each matcher inspects the token at one position (with a small lookahead
window) and returns the [start, end) token span of a detected mention, or
None. Patterns target per-token shapes because the tokenizer keeps dates
and clock times as single tokens.
"""
from __future__ import annotations

import re

NUMERIC_DATE = re.compile(r"^\d{1,2}[/-]\d{1,2}[/-]\d{2,4}$")
CLOCK_TIME = re.compile(r"^\d{1,2}:\d{2}$")
INTEGER = re.compile(r"^\d+$")
YEAR = re.compile(r"^\d{4}$")

MONTHS = (
    "enero", "febrero", "marzo", "abril", "mayo", "junio", "julio",
    "agosto", "septiembre", "setiembre", "octubre", "noviembre", "diciembre",
)
AGE_UNITS = ("años", "año", "meses", "mes", "días", "día")
HOUR_WORDS = ("horas", "h")
HONORIFICS = ("dr", "dra")

# Summary of the shapes each category fires on, also serialized with a
# compiled rule set so taggings can be audited from the resources alone.
PATTERN_INVENTORY: dict[str, tuple[str, ...]] = {
    "Date": (
        NUMERIC_DATE.pattern,
        r"\d{1,2} de <month>( de \d{4})?",
        r"<month> de \d{4}",
    ),
    "Time": (
        CLOCK_TIME.pattern + r"( horas?| h)?",
        r"\d{1,2} (horas|h)",
    ),
    "Age": (r"\d+ (años?|meses?|días?)( y medio)?",),
    "Doctor": (r"(Dr|Dra)\.? <Capitalized>{1,2}",),
}


def _fold(tokens: list[str], i: int) -> str:
    return tokens[i].casefold() if i < len(tokens) else ""


def _is_capitalized_word(surface: str) -> bool:
    return surface[:1].isupper() and surface.isalpha()


def match_date(surfaces: list[str], i: int) -> tuple[int, int] | None:
    n = len(surfaces)
    tok = surfaces[i]
    if NUMERIC_DATE.match(tok):
        return i, i + 1
    # "22 de junio" with an optional "de 2016" tail.
    if (
        INTEGER.match(tok)
        and 1 <= int(tok) <= 31
        and _fold(surfaces, i + 1) == "de"
        and _fold(surfaces, i + 2) in MONTHS
    ):
        end = i + 3
        if _fold(surfaces, end) == "de" and end + 1 < n and YEAR.match(surfaces[end + 1]):
            end += 2
        return i, end
    if (
        tok.casefold() in MONTHS
        and _fold(surfaces, i + 1) == "de"
        and i + 2 < n
        and YEAR.match(surfaces[i + 2])
    ):
        return i, i + 3
    return None


def match_time(surfaces: list[str], i: int) -> tuple[int, int] | None:
    tok = surfaces[i]
    if CLOCK_TIME.match(tok):
        end = i + 1
        if _fold(surfaces, end) in HOUR_WORDS:
            end += 1
        return i, end
    if INTEGER.match(tok) and int(tok) <= 24 and _fold(surfaces, i + 1) in HOUR_WORDS:
        return i, i + 2
    return None


def match_age(surfaces: list[str], i: int, extended: bool = True) -> tuple[int, int] | None:
    if not INTEGER.match(surfaces[i]) or _fold(surfaces, i + 1) not in AGE_UNITS:
        return None
    end = i + 2
    if extended and _fold(surfaces, end) == "y" and _fold(surfaces, end + 1) == "medio":
        end += 2
    return i, end


def match_doctor(
    surfaces: list[str],
    i: int,
    include_honorific: bool = True,
) -> tuple[int, int] | None:
    if surfaces[i].casefold() not in HONORIFICS:
        return None
    j = i + 1
    if j < len(surfaces) and surfaces[j] == ".":
        j += 1
    name_start = j
    while j < len(surfaces) and j - name_start < 2 and _is_capitalized_word(surfaces[j]):
        j += 1
    if j == name_start:
        return None
    return (i if include_honorific else name_start), j
