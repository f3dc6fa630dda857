"""Command-line entry point wiring corpora, taggers, scoring, and redaction.

Every command is deterministic given its flags (all randomness flows from
explicit seeds) and records a JSON run manifest describing inputs, outputs,
and their content hashes, so identical configurations are provably
reproducible.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .ablation import DEFAULT_FRACTIONS, ablation_run
from .anonymise import (
    AnonymisationPolicy,
    anonymise_with_mapping,
    build_surrogate_pools,
    scan_for_leaks,
)
from .corpus import (
    Document,
    LabelSet,
    Sentence,
    decode_bio,
    encode_bio,
    gold_sentences,
    read_brat_dir,
    read_brat_file,
    read_interchange,
    split_corpus,
    split_sentences,
    write_brat_dir,
    write_interchange,
)
from .crf import CrfConfig, fit_crf, load_model, save_model
from .errors import ClinDeidError, EmptyCorpus, FileMissing, MalformedRow
from .evaluation import (
    ALL_SCENARIOS,
    Metrics,
    confusion_matrix,
    entity_metrics,
    metrics_to_csv,
    token_metrics,
)
from .rules import build_rules, load_rules, save_rules, tag_rules
from .synthetic import GeneratorConfig, generate
from .systems import CrfSystem, RuleBaselineSystem

log = logging.getLogger(__name__)


# --------------------------------------------------------------------------
# hashing and manifests

def _hash_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _hash_path(path: Path) -> str:
    """Content hash of a file, or of a directory's sorted file tree."""
    if path.is_file():
        return _hash_bytes(path.read_bytes())
    digest = hashlib.sha256()
    for child in sorted(p for p in path.rglob("*") if p.is_file()):
        digest.update(str(child.relative_to(path)).encode("utf-8"))
        digest.update(child.read_bytes())
    return digest.hexdigest()


@dataclass
class RunManifest:
    """Reproducibility record written next to every command's output."""

    command: str
    tool_version: str
    started_at: str
    finished_at: str
    config: dict
    config_hash: str
    seeds: dict
    input_hashes: dict
    output_hashes: dict

    def write(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n", encoding="utf-8")


_SKIP_CONFIG_KEYS = ("config", "func")


def _write_manifest(
    args: argparse.Namespace,
    started_at: str,
    inputs: list[Path],
    outputs: list[Path],
    seeds: dict | None = None,
) -> Path:
    config = {
        key: str(value) if isinstance(value, Path) else value
        for key, value in sorted(vars(args).items())
        if key not in _SKIP_CONFIG_KEYS and not callable(value)
    }
    manifest = RunManifest(
        command=args.command,
        tool_version=__version__,
        started_at=started_at,
        finished_at=datetime.now(timezone.utc).isoformat(),
        config=config,
        config_hash=_hash_bytes(json.dumps(config, sort_keys=True).encode("utf-8")),
        seeds=seeds or {},
        input_hashes={str(p): _hash_path(Path(p)) for p in inputs if Path(p).exists()},
        output_hashes={str(p): _hash_path(Path(p)) for p in outputs if Path(p).exists()},
    )
    first = Path(outputs[0])
    manifest_path = first / "run_manifest.json" if first.is_dir() else first.with_name(first.name + ".manifest.json")
    manifest.write(manifest_path)
    return manifest_path


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


# --------------------------------------------------------------------------
# shared input helpers

def _load_labels(path: str | None) -> LabelSet:
    return LabelSet.from_file(path) if path else LabelSet()


def _read_plain_or_brat_dir(directory: str, labels: LabelSet) -> list[Document]:
    """Documents from *.txt files; sibling .ann files are optional."""
    root = Path(directory)
    if not root.is_dir():
        raise FileMissing(f"input directory not found: {directory}")
    documents = []
    for txt in sorted(root.glob("*.txt")):
        if txt.with_suffix(".ann").exists():
            documents.append(read_brat_file(txt, labels))
        else:
            documents.append(Document(id=txt.stem, text=txt.read_text(encoding="utf-8")))
    if not documents:
        raise EmptyCorpus(f"no .txt documents under {directory}")
    return documents


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


# --------------------------------------------------------------------------
# commands

def _cmd_gen_corpus(args: argparse.Namespace) -> int:
    started = _now()
    documents = generate(GeneratorConfig(seed=args.seed, n_documents=args.docs))
    out = Path(args.out)
    write_brat_dir(documents, out)
    print(f"wrote {len(documents)} documents to {out}")
    _write_manifest(args, started, inputs=[], outputs=[out], seeds={"seed": args.seed})
    return 0


def _cmd_split(args: argparse.Namespace) -> int:
    started = _now()
    labels = _load_labels(args.labels)
    documents = read_brat_dir(args.in_dir, labels)
    ratios = args.ratios
    if len(ratios) != 3:
        raise MalformedRow(f"--ratios needs three numbers, got {ratios}")
    parts = split_corpus(documents, ratios=ratios, seed=args.seed)
    out = Path(args.out)
    for name, docs in (("train", parts.train), ("dev", parts.dev), ("test", parts.test)):
        write_brat_dir(docs, out / name)
    sizes = parts.sizes()
    print(f"split {len(documents)} documents into train={sizes[0]} dev={sizes[1]} test={sizes[2]}")
    _write_manifest(args, started, inputs=[Path(args.in_dir)], outputs=[out], seeds={"seed": args.seed})
    return 0


def _cmd_build_rules(args: argparse.Namespace) -> int:
    started = _now()
    labels = _load_labels(args.labels)
    documents = read_brat_dir(args.train, labels)
    rules = build_rules(
        documents,
        include_honorific=not args.no_honorific,
        extended_age=not args.no_extended_age,
    )
    out = Path(args.out)
    save_rules(rules, out)
    n_entries = sum(len(g) for g in rules.gazetteers.values())
    print(f"compiled {len(rules.gazetteers)} gazetteers ({n_entries} phrases) to {out}")
    _write_manifest(args, started, inputs=[Path(args.train)], outputs=[out])
    return 0


def _cmd_train_crf(args: argparse.Namespace) -> int:
    started = _now()
    labels = _load_labels(args.labels)
    train_docs = read_brat_dir(args.train, labels)
    train = [s for d in train_docs for s in gold_sentences(d, labels)]
    dev: list[Sentence] = []
    inputs = [Path(args.train)]
    if args.dev:
        dev = [s for d in read_brat_dir(args.dev, labels) for s in gold_sentences(d, labels)]
        inputs.append(Path(args.dev))
    config = CrfConfig(
        c1=args.c1,
        c2=args.c2,
        max_iterations=args.max_iter,
        all_transitions=not args.no_all_transitions,
        window=args.window,
        convergence_tol=args.tol,
    )
    model, stats = fit_crf(train, dev or None, config=config, labels=labels)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_model(model, out)
    print(
        f"trained on {stats.n_train_sentences} sentences: "
        f"{stats.iterations} iterations, final objective {stats.objective_history[-1]:.4f}, "
        f"converged={stats.converged}, {stats.wall_time_s:.1f}s -> {out}"
    )
    _write_manifest(args, started, inputs=inputs, outputs=[out])
    return 0


def _tag_documents(args: argparse.Namespace, labels: LabelSet, documents: list[Document]):
    """Predicted annotations per document under the chosen tagger."""
    if args.tagger == "crf":
        if not args.model:
            raise FileMissing("--model is required for --tagger crf")
        model = load_model(args.model)
        tag_fn = model.tag_sentence
    else:
        if not args.rules_dir:
            raise FileMissing("--rules-dir is required for --tagger rules")
        rules = load_rules(args.rules_dir)
        tag_fn = lambda sent: tag_rules(sent, rules)  # noqa: E731

    tagged = []
    for doc in documents:
        annotations = []
        sentences = split_sentences(doc)
        for sent in sentences:
            tags = tag_fn(sent)
            annotations.extend(decode_bio(doc.text, list(sent.tokens), tags, labels))
        annotations = [
            type(a)(id=f"T{i + 1}", category=a.category, start=a.start, end=a.end, surface=a.surface)
            for i, a in enumerate(sorted(annotations, key=lambda a: a.start))
        ]
        tagged.append((doc, sentences, annotations))
    return tagged


def _cmd_tag(args: argparse.Namespace) -> int:
    started = _now()
    labels = _load_labels(args.labels)
    documents = _read_plain_or_brat_dir(args.in_dir, labels)
    tagged = _tag_documents(args, labels, documents)
    out = Path(args.out)
    n_spans = sum(len(anns) for _, _, anns in tagged)
    if args.format == "brat":
        write_brat_dir(
            [Document(id=doc.id, text=doc.text, annotations=anns) for doc, _, anns in tagged],
            out,
        )
    else:
        rows: list[Sentence] = []
        for doc, sentences, anns in tagged:
            for sent in sentences:
                sent = sent.with_pred(encode_bio(sent.tokens, anns, labels))
                if doc.annotations:
                    sent = sent.with_gold(encode_bio(sent.tokens, doc.annotations, labels))
                rows.append(sent)
        out.parent.mkdir(parents=True, exist_ok=True)
        write_interchange(out, rows)
    print(f"tagged {len(documents)} documents ({n_spans} spans) with {args.tagger} -> {out}")
    inputs = [Path(args.in_dir)] + [Path(p) for p in (args.model, args.rules_dir) if p]
    _write_manifest(args, started, inputs=inputs, outputs=[out])
    return 0


def _aligned_token_tags(
    gold_docs: list[Document],
    labels: LabelSet,
    pred_source: str,
) -> tuple[list[str], list[str], dict[str, list], dict[str, list]]:
    """Flattened gold/pred tag streams plus per-document annotation maps."""
    gold_map = {doc.id: list(doc.annotations) for doc in gold_docs}
    gold_flat: list[str] = []
    pred_flat: list[str] = []
    pred_map: dict[str, list] = {doc.id: [] for doc in gold_docs}

    pred_path = Path(pred_source)
    if pred_path.is_file():
        by_key = {}
        for sent in read_interchange(pred_path, labels):
            if sent.pred is None:
                raise MalformedRow(f"{pred_path}: sentence {sent.doc_id}:{sent.index} has no predictions")
            by_key[(sent.doc_id, sent.index)] = sent
        unknown = {doc_id for doc_id, _ in by_key} - set(gold_map)
        if unknown:
            from .errors import CrossDocumentAnnotation

            raise CrossDocumentAnnotation(
                f"predictions reference unknown documents: {sorted(unknown)}"
            )
        for doc in gold_docs:
            for sent in gold_sentences(doc, labels):
                tsv_sent = by_key.get((doc.id, sent.index))
                if tsv_sent is None:
                    raise MalformedRow(f"{pred_path}: missing sentence {doc.id}:{sent.index}")
                if [t.surface for t in tsv_sent.tokens] != [t.surface for t in sent.tokens]:
                    raise MalformedRow(
                        f"{pred_path}: token mismatch in sentence {doc.id}:{sent.index}"
                    )
                gold_flat.extend(sent.gold)
                pred_flat.extend(tsv_sent.pred)
                pred_map[doc.id].extend(
                    decode_bio(doc.text, list(sent.tokens), list(tsv_sent.pred), labels)
                )
    else:
        pred_docs = {doc.id: doc for doc in read_brat_dir(pred_path, labels)}
        unknown = set(pred_docs) - set(gold_map)
        if unknown:
            from .errors import CrossDocumentAnnotation

            raise CrossDocumentAnnotation(
                f"predictions reference unknown documents: {sorted(unknown)}"
            )
        for doc in gold_docs:
            pred_doc = pred_docs.get(doc.id)
            pred_anns = list(pred_doc.annotations) if pred_doc else []
            pred_map[doc.id] = pred_anns
            for sent in gold_sentences(doc, labels):
                gold_flat.extend(sent.gold)
                pred_flat.extend(encode_bio(sent.tokens, pred_anns, labels))
    return gold_flat, pred_flat, gold_map, pred_map


def _cmd_eval(args: argparse.Namespace) -> int:
    started = _now()
    labels = _load_labels(args.labels)
    gold_docs = read_brat_dir(args.gold, labels)
    gold_flat, pred_flat, gold_map, pred_map = _aligned_token_tags(gold_docs, labels, args.pred)

    results: dict[str, Metrics] = {
        scenario: token_metrics(gold_flat, pred_flat, scenario)
        for scenario in ("token-detection", "token-relaxed", "token-strict")
    }
    results["entity-detection"] = entity_metrics(gold_map, pred_map, "detection")
    results["entity-classification"] = entity_metrics(gold_map, pred_map, "classification")

    rows = [(args.system, 100.0, results[s]) for s in ALL_SCENARIOS]
    csv_text = metrics_to_csv(rows)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(csv_text, encoding="utf-8")
    print(csv_text, end="")

    outputs = [out]
    if args.confusion:
        confusion_path = Path(args.confusion)
        confusion_path.parent.mkdir(parents=True, exist_ok=True)
        confusion_path.write_text(
            confusion_matrix(gold_flat, pred_flat, labels).to_tsv(), encoding="utf-8"
        )
        outputs.append(confusion_path)
    _write_manifest(args, started, inputs=[Path(args.gold), Path(args.pred)], outputs=outputs)

    if args.min_f1 is not None:
        failing = [s for s in ALL_SCENARIOS if results[s].f1 < args.min_f1]
        if failing:
            print(f"FAIL: scenarios below --min-f1 {args.min_f1}: {', '.join(failing)}")
            return 1
    return 0


def _cmd_ablate(args: argparse.Namespace) -> int:
    started = _now()
    labels = _load_labels(args.labels)
    documents = read_brat_dir(args.corpus, labels)
    split = split_corpus(documents, ratios=args.ratios, seed=args.seed)
    systems = []
    for name in args.systems:
        if name == "rules":
            systems.append(RuleBaselineSystem(labels=labels))
        elif name == "crf":
            config = CrfConfig(c1=args.c1, c2=args.c2, max_iterations=args.max_iter)
            systems.append(CrfSystem(config=config, labels=labels))
        else:
            raise ClinDeidError(f"unknown system {name!r} (choose from rules, crf)")
    report = ablation_run(systems, split, fractions=args.fractions, seed=args.seed, labels=labels)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    scenario_rows = [
        (name, float(frac), m)
        for name, frac, m in report.rows
        if m.scenario == args.scenario
    ]
    (out / "report.csv").write_text(metrics_to_csv(scenario_rows), encoding="utf-8")
    (out / "all_scenarios.csv").write_text(report.to_csv(), encoding="utf-8")
    (out / "deltas.tsv").write_text(report.deltas_vs_full(args.scenario), encoding="utf-8")
    (out / "subsets.json").write_text(
        json.dumps(
            {
                "seed": report.seed,
                "fractions": list(report.fractions),
                "subset_sizes": report.subset_sizes,
                "subset_sha256": report.subset_hashes,
            },
            indent=2,
            sort_keys=True,
        )
        + "\n",
        encoding="utf-8",
    )
    print(f"wrote {len(scenario_rows)} {args.scenario} rows for {len(systems)} systems to {out}")
    _write_manifest(args, started, inputs=[Path(args.corpus)], outputs=[out], seeds={"seed": args.seed})
    return 0


def _cmd_anonymise(args: argparse.Namespace) -> int:
    started = _now()
    labels = _load_labels(args.labels)
    documents = read_brat_dir(args.in_dir, labels)
    policy = AnonymisationPolicy(
        mode=args.mode,
        surrogate_seed=args.seed,
        surrogate_pools=build_surrogate_pools(documents) if args.mode == "surrogate" else {},
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    leaked = 0
    for doc in documents:
        text, mapping = anonymise_with_mapping(doc, list(doc.annotations), policy)
        (out / f"{doc.id}.txt").write_text(text, encoding="utf-8")
        if args.keep_mapping:
            mapping_dir = out / "mappings"
            mapping_dir.mkdir(exist_ok=True)
            (mapping_dir / f"{doc.id}.json").write_text(
                json.dumps([asdict(entry) for entry in mapping], ensure_ascii=False, indent=2) + "\n",
                encoding="utf-8",
            )
        if args.mode != "surrogate":
            leaked += len(scan_for_leaks(text, [e.original for e in mapping]))
    print(f"anonymised {len(documents)} documents in {args.mode} mode -> {out}")
    if leaked:
        print(f"WARNING: {leaked} sensitive surfaces still present in output")
        return 1
    _write_manifest(args, started, inputs=[Path(args.in_dir)], outputs=[out], seeds={"seed": args.seed})
    return 0


def _cmd_import_predictions(args: argparse.Namespace) -> int:
    started = _now()
    labels = _load_labels(args.labels)
    gold_docs = read_brat_dir(args.gold, labels)
    pred_root = Path(args.pred)
    if not pred_root.is_dir():
        raise FileMissing(f"prediction directory not found: {args.pred}")
    rows: list[Sentence] = []
    for doc in gold_docs:
        ann_path = pred_root / f"{doc.id}.ann"
        if ann_path.exists():
            from .corpus import parse_brat

            txt = doc.text
            pred_doc = parse_brat(txt, ann_path.read_text(encoding="utf-8"), doc_id=doc.id, labels=labels)
            pred_anns = list(pred_doc.annotations)
        else:
            pred_anns = []
        for sent in gold_sentences(doc, labels):
            rows.append(sent.with_pred(encode_bio(sent.tokens, pred_anns, labels)))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_interchange(out, rows)
    print(f"imported predictions for {len(gold_docs)} documents -> {out}")
    _write_manifest(args, started, inputs=[Path(args.gold), pred_root], outputs=[out])
    return 0


# --------------------------------------------------------------------------
# parser assembly

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clindeid",
        description="Detect, score, and redact sensitive spans in Spanish clinical text.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--config", default=None, help="key=value file providing flag defaults")
        p.add_argument("--labels", default=None, help="category list file (default: built-in 11)")
        return p

    p = add("gen-corpus", _cmd_gen_corpus, "generate a synthetic annotated corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--docs", type=int, default=100)
    p.add_argument("--out", required=True)

    p = add("split", _cmd_split, "shuffle and split a corpus into train/dev/test")
    p.add_argument("--in", dest="in_dir", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--ratios", type=_parse_float_list, default=(0.72, 0.08, 0.20))
    p.add_argument("--seed", type=int, default=0)

    p = add("build-rules", _cmd_build_rules, "compile gazetteers and patterns from training data")
    p.add_argument("--train", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--no-honorific", action="store_true")
    p.add_argument("--no-extended-age", action="store_true")

    p = add("train-crf", _cmd_train_crf, "train the sequence model")
    p.add_argument("--train", required=True)
    p.add_argument("--dev", default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--c1", type=float, default=0.1)
    p.add_argument("--c2", type=float, default=0.1)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--window", type=_parse_int_list, default=(-1, 0, 1))
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--no-all-transitions", action="store_true")

    p = add("tag", _cmd_tag, "annotate raw documents with a trained tagger")
    p.add_argument("--tagger", choices=("rules", "crf"), required=True)
    p.add_argument("--in", dest="in_dir", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--model", default=None)
    p.add_argument("--rules-dir", default=None)
    p.add_argument("--format", choices=("brat", "tsv"), default="brat")

    p = add("eval", _cmd_eval, "score predictions against gold annotations")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True, help="BRAT directory or interchange TSV file")
    p.add_argument("--system", default="predictions")
    p.add_argument("--out", default="report.csv")
    p.add_argument("--confusion", default=None)
    p.add_argument("--min-f1", type=float, default=None)

    p = add("ablate", _cmd_ablate, "retrain on nested data fractions and report the curve")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--systems", type=lambda s: tuple(s.split(",")), default=("rules", "crf"))
    p.add_argument("--fractions", type=_parse_int_list, default=DEFAULT_FRACTIONS)
    p.add_argument("--ratios", type=_parse_float_list, default=(0.72, 0.08, 0.20))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scenario", choices=ALL_SCENARIOS, default="token-detection")
    p.add_argument("--c1", type=float, default=0.1)
    p.add_argument("--c2", type=float, default=0.1)
    p.add_argument("--max-iter", type=int, default=100)

    p = add("anonymise", _cmd_anonymise, "rewrite annotated documents in a de-identified style")
    p.add_argument("--mode", choices=("mask", "placeholder", "surrogate"), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--in", dest="in_dir", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--keep-mapping", action="store_true")

    p = add("import-predictions", _cmd_import_predictions, "merge external predictions into interchange TSV")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--out", required=True)

    return parser


def _load_config_file(path: str) -> dict[str, str]:
    config_path = Path(path)
    if not config_path.exists():
        raise FileMissing(f"config file not found: {path}")
    values: dict[str, str] = {}
    for lineno, raw in enumerate(config_path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise MalformedRow(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config_defaults(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    """Let a --config file supply defaults that explicit flags override."""
    if "--config" not in argv:
        return
    config_path = argv[argv.index("--config") + 1]
    values = _load_config_file(config_path)
    if not values:
        return
    # find the subparser in use
    command = next((a for a in argv if not a.startswith("-")), None)
    actions = {
        a.dest: a
        for sub_action in parser._subparsers._group_actions  # noqa: SLF001
        for name, sub in sub_action.choices.items()
        if name == command
        for a in sub._actions  # noqa: SLF001
    }
    converted = {}
    for key, raw in values.items():
        action = actions.get(key)
        if action is None:
            raise MalformedRow(f"config key {key!r} does not match any {command} flag")
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):  # noqa: SLF001
            converted[key] = raw.lower() in ("1", "true", "yes", "on")
        elif action.type is not None:
            converted[key] = action.type(raw)
        else:
            converted[key] = raw
    for sub_action in parser._subparsers._group_actions:  # noqa: SLF001
        for name, sub in sub_action.choices.items():
            if name == command:
                sub.set_defaults(**converted)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        _apply_config_defaults(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except ClinDeidError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
