"""Rule-based baseline tagger: regex detectors and gazetteer look-ups."""
from .detectors import (
    PATTERN_INVENTORY,
    match_age,
    match_date,
    match_doctor,
    match_time,
)
from .gazetteer import Gazetteer, build_gazetteers, load_name_list
from .tagger import (
    CATEGORY_PRIORITY,
    GAZETTEER_CATEGORIES,
    RuleSet,
    build_rules,
    default_name_paths,
    load_rules,
    save_rules,
    tag_rules,
)

__all__ = [
    "CATEGORY_PRIORITY",
    "GAZETTEER_CATEGORIES",
    "Gazetteer",
    "PATTERN_INVENTORY",
    "RuleSet",
    "build_gazetteers",
    "build_rules",
    "default_name_paths",
    "load_name_list",
    "load_rules",
    "match_age",
    "match_date",
    "match_doctor",
    "match_time",
    "save_rules",
    "tag_rules",
]
