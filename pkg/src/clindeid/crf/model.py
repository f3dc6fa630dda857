"""Trained linear-chain model: weights, alphabets, and a versioned file format."""
from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from ..corpus import LabelSet, Sentence
from ..errors import CorruptFile, VersionMismatch
from .features import DEFAULT_WINDOW, FeatureAlphabet, featurize
from .inference import viterbi_decode

MAGIC = b"CDCRF\n"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class CrfConfig:
    """Training configuration; defaults follow the reference setup."""

    algorithm: str = "lbfgs"
    max_iterations: int = 100
    c1: float = 0.1
    c2: float = 0.1
    all_transitions: bool = True
    window: tuple[int, ...] = DEFAULT_WINDOW
    convergence_tol: float = 1e-5

    def __post_init__(self) -> None:
        if self.algorithm != "lbfgs":
            raise ValueError(f"unsupported algorithm {self.algorithm!r}")
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError("c1 and c2 must be non-negative")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        object.__setattr__(self, "window", tuple(self.window))


@dataclass
class CrfModel:
    """Immutable tagger: frozen alphabets plus state and transition weights."""

    labels: LabelSet
    feature_names: list[str]
    state_weights: np.ndarray    # (n_features, n_labels)
    trans_weights: np.ndarray    # (n_labels, n_labels)
    config: CrfConfig = field(default_factory=CrfConfig)

    def __post_init__(self) -> None:
        self.bio = self.labels.bio_labels()
        k = len(self.bio)
        if self.state_weights.shape != (len(self.feature_names), k):
            raise ValueError("state weight shape does not match alphabets")
        if self.trans_weights.shape != (k, k):
            raise ValueError("transition weight shape does not match labels")
        if not (np.isfinite(self.state_weights).all() and np.isfinite(self.trans_weights).all()):
            raise ValueError("model weights must be finite")
        self.alphabet = FeatureAlphabet(self.feature_names, frozen=True)

    def emissions(self, sentences: list[Sentence]) -> tuple[np.ndarray, np.ndarray]:
        x, lengths, _ = featurize(sentences, self.config.window, self.alphabet)
        return x @ self.state_weights, lengths

    def tag(self, sentences: list[Sentence]) -> list[list[str]]:
        """Viterbi-decode BIO tags for each sentence."""
        if not sentences:
            return []
        em, lengths = self.emissions(sentences)
        ids = viterbi_decode(em, lengths, self.trans_weights)
        out = []
        pos = 0
        for n in lengths:
            out.append([self.bio[i] for i in ids[pos:pos + int(n)]])
            pos += int(n)
        return out

    def tag_sentence(self, sentence: Sentence) -> list[str]:
        return self.tag([sentence])[0]


def save_model(model: CrfModel, path: str | Path) -> None:
    """Write magic, version, JSON header, raw weights, and a checksum."""
    header = json.dumps(
        {
            "categories": list(model.labels.categories),
            "feature_names": model.feature_names,
            "config": asdict(model.config),
            "n_features": len(model.feature_names),
            "n_labels": len(model.bio),
        }
    ).encode("utf-8")
    body = (
        MAGIC
        + struct.pack(">HQ", FORMAT_VERSION, len(header))
        + header
        + np.ascontiguousarray(model.state_weights, dtype=np.float64).tobytes()
        + np.ascontiguousarray(model.trans_weights, dtype=np.float64).tobytes()
    )
    Path(path).write_bytes(body + hashlib.sha256(body).digest())


def load_model(path: str | Path) -> CrfModel:
    """Read a model file, verifying version and integrity."""
    blob = Path(path).read_bytes()
    fixed = len(MAGIC) + struct.calcsize(">HQ")
    if len(blob) < fixed + 32 or not blob.startswith(MAGIC):
        raise CorruptFile(f"{path}: not a model file")
    version, header_len = struct.unpack(">HQ", blob[len(MAGIC):fixed])
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"{path}: format version {version}, expected {FORMAT_VERSION}")
    body, digest = blob[:-32], blob[-32:]
    if hashlib.sha256(body).digest() != digest:
        raise CorruptFile(f"{path}: checksum mismatch (truncated or edited)")
    try:
        header = json.loads(body[fixed:fixed + header_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptFile(f"{path}: unreadable header") from exc
    f, k = header["n_features"], header["n_labels"]
    weights = np.frombuffer(body[fixed + header_len:], dtype=np.float64)
    if weights.size != f * k + k * k:
        raise CorruptFile(f"{path}: weight block has {weights.size} values, expected {f * k + k * k}")
    config = dict(header["config"])
    config["window"] = tuple(config["window"])
    return CrfModel(
        labels=LabelSet(categories=tuple(header["categories"])),
        feature_names=list(header["feature_names"]),
        state_weights=weights[:f * k].reshape(f, k).copy(),
        trans_weights=weights[f * k:].reshape(k, k).copy(),
        config=CrfConfig(**config),
    )
