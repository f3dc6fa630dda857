"""
The full pipeline as shell commands
===================================

Every library capability is also a subcommand, so the whole workflow
runs from a shell: generate, split, train, tag, evaluate, anonymise.
Predictions travel between tools as a token/tag TSV that any external
tagger can emit too. Each step writes a run manifest recording its
configuration, seeds, and input/output hashes.
"""
import csv
import json
import subprocess
import sys
import tempfile
from pathlib import Path

from clindeid.corpus import LabelSet, read_interchange

work = Path(tempfile.mkdtemp(prefix="clindeid-demo-"))


def run(*args: str) -> None:
    print("$ clindeid " + " ".join(args))
    subprocess.run([sys.executable, "-m", "clindeid.cli", *args], check=True)


# Generate a corpus, split it, and train the CRF on the training part.
run("gen-corpus", "--seed", "9", "--docs", "120", "--out", str(work / "corpus"))
run("split", "--in", str(work / "corpus"), "--seed", "0", "--out", str(work / "splits"))
run(
    "train-crf",
    "--train", str(work / "splits/train"),
    "--dev", str(work / "splits/dev"),
    "--max-iter", "60",
    "--out", str(work / "crf.model"),
)

# Tag the held-out documents into the interchange TSV. Because the input
# carried gold annotations, the TSV holds both columns and can be scored
# directly; a predictions-only TSV from some other system works the same
# way.
run(
    "tag",
    "--tagger", "crf",
    "--in", str(work / "splits/test"),
    "--model", str(work / "crf.model"),
    "--format", "tsv",
    "--out", str(work / "pred.tsv"),
)
sentences = read_interchange(work / "pred.tsv", LabelSet())
print(f"interchange file holds {len(sentences)} sentences")

run(
    "eval",
    "--gold", str(work / "splits/test"),
    "--pred", str(work / "pred.tsv"),
    "--out", str(work / "report.csv"),
)
with open(work / "report.csv", newline="") as handle:
    for row in csv.DictReader(handle):
        print(f"  {row['scenario']:<24} F1={row['f1']}")

# Tagging can also emit standoff files, which is what the anonymiser
# consumes: rewrite what the tagger found, keeping the mapping files.
run(
    "tag",
    "--tagger", "crf",
    "--in", str(work / "splits/test"),
    "--model", str(work / "crf.model"),
    "--format", "brat",
    "--out", str(work / "tagged"),
)
run(
    "anonymise",
    "--mode", "surrogate",
    "--seed", "4",
    "--in", str(work / "tagged"),
    "--keep-mapping",
    "--out", str(work / "anon"),
)

# Every command above left a manifest beside its outputs.
manifest = json.loads((work / "anon" / "run_manifest.json").read_text())
print("\nanonymise manifest:")
print(f"  command:     {manifest['command']}")
print(f"  seeds:       {manifest['seeds']}")
print(f"  config hash: {manifest['config_hash'][:16]}...")
