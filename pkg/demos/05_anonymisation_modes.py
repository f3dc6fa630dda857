"""
Three ways to remove what the tagger found
==========================================

The same annotated sentence rendered under each rewriting mode: masking
keeps lengths, placeholders keep readability, surrogates keep realism.
The mapping side-table makes every rewrite reversible and auditable.
"""
from clindeid.anonymise import (
    AnonymisationPolicy,
    anonymise,
    anonymise_with_mapping,
    build_surrogate_pools,
    restore,
    scan_for_leaks,
)
from clindeid.corpus import Annotation, Document

text = (
    "Paciente de 64 años operado de una hernia el 12/01/2016 por la Dra Lopez.\n"
    "Acude al Hospital Serrano a las 9:30 horas.\n"
)
annotations = [
    Annotation("T1", "Age", 12, 19, "64 años"),
    Annotation("T2", "Date", 45, 55, "12/01/2016"),
    Annotation("T3", "Doctor", 60, 72, "la Dra Lopez"),
    Annotation("T4", "Hospital", 83, 99, "Hospital Serrano"),
    Annotation("T5", "Time", 106, 116, "9:30 horas"),
]
doc = Document(id="demo-01", text=text, annotations=annotations)
originals = [a.surface for a in annotations]

print("original:")
print(text)

# Masking replaces every sensitive character, so offsets never move.
masked = anonymise(doc, annotations, AnonymisationPolicy(mode="mask"))
print("masked:")
print(masked)

# Placeholders swap each span for its category tag, stretched or shrunk
# with dashes; output length may differ from the input.
placeheld = anonymise(doc, annotations, AnonymisationPolicy(mode="placeholder"))
print("placeholder:")
print(placeheld)

# Surrogates keep the text plausible: dates shift together inside a
# document, ages shift by a bounded offset, people get new names, and
# pooled categories resample from surfaces seen elsewhere in the corpus.
policy = AnonymisationPolicy(
    mode="surrogate",
    surrogate_seed=4,
    surrogate_pools=build_surrogate_pools([doc]) | {"Hospital": ("Hospital del Mar", "Clínica Recoletas")},
)
surrogated, mapping = anonymise_with_mapping(doc, annotations, policy)
print("surrogate:")
print(surrogated)

# The mapping records what was written where, in output coordinates...
for entry in mapping:
    print(f"  {entry.category:<8} [{entry.start:>3},{entry.end:>3}) {entry.original!r} -> {entry.replacement!r}")

# ...which is enough to restore the original text exactly,
assert restore(surrogated, mapping) == text
print("\nrestore round-trip: OK")

# and masking/placeholder outputs provably contain no original span.
assert scan_for_leaks(masked, originals) == []
assert scan_for_leaks(placeheld, originals) == []
print("leak scan on mask + placeholder: clean")
