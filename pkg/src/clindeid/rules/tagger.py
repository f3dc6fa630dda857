"""Rule-based tagger: regex detectors plus training-data gazetteers."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..corpus import Document, Sentence
from ..errors import FileMissing
from . import detectors
from .gazetteer import Gazetteer, build_gazetteers, load_name_list

# Conflict resolution when two rules claim the same token: more specific
# and more frequent categories first. `Other` has no detector at all, so
# every one of its mentions is missed by design.
CATEGORY_PRIORITY = (
    "Date", "Time", "Age", "Doctor", "Hospital",
    "Patient", "Sex", "Kinship", "Location", "Job",
)

GAZETTEER_CATEGORIES = ("Hospital", "Sex", "Kinship", "Location", "Job")

_RESOURCE_DIR = Path(__file__).resolve().parent.parent / "resources"

OPTIONS_FILE = "options.json"
NAMES_FILE = "names.txt"
PATTERNS_FILE = "patterns.txt"


@dataclass(frozen=True)
class RuleSet:
    """Compiled detectors: regex categories plus per-category dictionaries."""

    gazetteers: dict[str, Gazetteer] = field(default_factory=dict)
    name_list: tuple[str, ...] = ()
    include_honorific: bool = True
    extended_age: bool = True

    def __post_init__(self) -> None:
        names = Gazetteer.from_phrases(self.name_list)
        object.__setattr__(self, "_names", names)

    @property
    def names(self) -> Gazetteer:
        return self._names


def default_name_paths() -> tuple[Path, Path]:
    return _RESOURCE_DIR / "names_female.txt", _RESOURCE_DIR / "names_male.txt"


def build_rules(
    train: list[Document],
    name_paths: tuple[Path, ...] | None = None,
    include_honorific: bool = True,
    extended_age: bool = True,
) -> RuleSet:
    """Compile gazetteers from gold training spans and load the name list."""
    names: list[str] = []
    for path in name_paths if name_paths is not None else default_name_paths():
        names.extend(load_name_list(path))
    return RuleSet(
        gazetteers=build_gazetteers(train, GAZETTEER_CATEGORIES),
        name_list=tuple(dict.fromkeys(names)),
        include_honorific=include_honorific,
        extended_age=extended_age,
    )


def _regex_spans(rules: RuleSet, surfaces: list[str], category: str) -> list[tuple[int, int]]:
    matcher = {
        "Date": detectors.match_date,
        "Time": detectors.match_time,
        "Age": lambda s, i: detectors.match_age(s, i, extended=rules.extended_age),
        "Doctor": lambda s, i: detectors.match_doctor(
            s, i, include_honorific=rules.include_honorific
        ),
    }[category]
    spans: list[tuple[int, int]] = []
    i = 0
    while i < len(surfaces):
        hit = matcher(surfaces, i)
        if hit is None:
            i += 1
        else:
            spans.append(hit)
            i = hit[1]
    return spans


def _patient_spans(rules: RuleSet, sentence: Sentence) -> list[tuple[int, int]]:
    """Name-list hits, extended rightward over capitalized surname tokens."""
    surfaces = [t.surface for t in sentence.tokens]
    folded = [s.casefold() for s in surfaces]
    spans = []
    for start, end in rules.names.find_matches(folded):
        while (
            end < len(surfaces)
            and end - start < 4
            and surfaces[end][:1].isupper()
            and surfaces[end].isalpha()
        ):
            end += 1
        spans.append((start, end))
    return spans


def _candidate_spans(rules: RuleSet, sentence: Sentence, category: str) -> list[tuple[int, int]]:
    surfaces = [t.surface for t in sentence.tokens]
    if category in ("Date", "Time", "Age", "Doctor"):
        return _regex_spans(rules, surfaces, category)
    if category == "Patient":
        return _patient_spans(rules, sentence)
    gaz = rules.gazetteers.get(category)
    if gaz is None or len(gaz) == 0:
        return []
    return gaz.find_matches([s.casefold() for s in surfaces])


def tag_rules(sentence: Sentence, rules: RuleSet) -> list[str]:
    """BIO tags from the rule inventory, higher-priority categories first."""
    n = len(sentence.tokens)
    tags = ["O"] * n
    claimed = [False] * n
    for category in CATEGORY_PRIORITY:
        for start, end in _candidate_spans(rules, sentence, category):
            if any(claimed[start:end]):
                continue
            for i in range(start, end):
                claimed[i] = True
                tags[i] = ("B-" if i == start else "I-") + category
    return tags


def save_rules(rules: RuleSet, directory: str | Path) -> None:
    """Serialize a rule set as auditable plain-text resources."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for category, gaz in rules.gazetteers.items():
        (directory / f"{category}.gaz.txt").write_text(
            "".join(p + "\n" for p in gaz.phrases()), encoding="utf-8"
        )
    (directory / NAMES_FILE).write_text(
        "".join(n + "\n" for n in rules.name_list), encoding="utf-8"
    )
    (directory / PATTERNS_FILE).write_text(
        "".join(
            f"{cat}\t{pat}\n"
            for cat, pats in detectors.PATTERN_INVENTORY.items()
            for pat in pats
        ),
        encoding="utf-8",
    )
    (directory / OPTIONS_FILE).write_text(
        json.dumps(
            {
                "include_honorific": rules.include_honorific,
                "extended_age": rules.extended_age,
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )


def load_rules(directory: str | Path) -> RuleSet:
    """Rebuild a rule set from a directory written by save_rules."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FileMissing(f"rules directory not found: {directory}")
    options = json.loads((directory / OPTIONS_FILE).read_text(encoding="utf-8"))
    gazetteers = {}
    for path in sorted(directory.glob("*.gaz.txt")):
        category = path.name[:-len(".gaz.txt")]
        phrases = [ln for ln in path.read_text(encoding="utf-8").splitlines() if ln]
        gazetteers[category] = Gazetteer.from_phrases(phrases)
    names = load_name_list(directory / NAMES_FILE)
    return RuleSet(
        gazetteers=gazetteers,
        name_list=tuple(names),
        include_honorific=options["include_honorific"],
        extended_age=options["extended_age"],
    )
