"""Dictionary look-up over case-folded, accent-preserving token phrases."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..corpus import Document, tokenize
from ..errors import FileMissing


@dataclass(frozen=True)
class Gazetteer:
    """Set of known phrases, matched longest-first over token sequences."""

    entries: frozenset[tuple[str, ...]]
    max_phrase_len: int

    @classmethod
    def from_phrases(cls, phrases) -> "Gazetteer":
        entries = set()
        for phrase in phrases:
            toks = tuple(t.surface.casefold() for t in tokenize(phrase))
            if toks:
                entries.add(toks)
        longest = max((len(e) for e in entries), default=0)
        return cls(entries=frozenset(entries), max_phrase_len=longest)

    def __len__(self) -> int:
        return len(self.entries)

    def find_matches(self, folded_surfaces: list[str]) -> list[tuple[int, int]]:
        """Non-overlapping [start, end) token spans, longest match first."""
        out: list[tuple[int, int]] = []
        i = 0
        n = len(folded_surfaces)
        while i < n:
            hit = None
            for width in range(min(self.max_phrase_len, n - i), 0, -1):
                if tuple(folded_surfaces[i:i + width]) in self.entries:
                    hit = (i, i + width)
                    break
            if hit is None:
                i += 1
            else:
                out.append(hit)
                i = hit[1]
        return out

    def phrases(self) -> list[str]:
        """Entries as space-joined strings, sorted for stable serialization."""
        return sorted(" ".join(e) for e in self.entries)


def build_gazetteers(
    train: list[Document],
    categories: tuple[str, ...],
) -> dict[str, Gazetteer]:
    """Compile one gazetteer per category from gold annotation surfaces."""
    surfaces: dict[str, set[str]] = {cat: set() for cat in categories}
    for doc in train:
        for ann in doc.annotations:
            if ann.category in surfaces:
                surfaces[ann.category].add(ann.surface)
    return {cat: Gazetteer.from_phrases(sorted(surfaces[cat])) for cat in categories}


def load_name_list(path: str | Path) -> list[str]:
    """Ordered, deduplicated name list, one name per line."""
    path = Path(path)
    if not path.exists():
        raise FileMissing(f"name list not found: {path}")
    names = [ln.strip() for ln in path.read_text(encoding="utf-8").splitlines()]
    return list(dict.fromkeys(n for n in names if n))
