"""Per-token feature template and sparse design-matrix construction.

Feature names are plain strings prefixed with the context offset they
came from ("-1:", "0:", "+1:"). Binary features carry value 1.0 and
encode their outcome in the name (`0:is_number=false`); ratio features
are real-valued. The alphabet is frozen after training; unseen test-time
features are dropped rather than hashed.
"""
from __future__ import annotations

import re
import unicodedata

import numpy as np
from scipy.sparse import csr_matrix

from ..corpus import Sentence
from ..errors import IndexOutOfRange

DEFAULT_WINDOW = (-1, 0, 1)

_NUMBER_RE = re.compile(r"^\d+(?:[.,]\d+)?$")
_EXTRA_KEYS = ("lemma", "pos", "ner")


def _is_punct_char(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _shape(surface: str) -> str:
    if surface.isdigit():
        return "digit"
    if surface.isalpha():
        if surface.isupper():
            return "upper"
        if surface.istitle():
            return "title"
        if surface.islower():
            return "lower"
        return "mixedcase"
    return "mixed"


def _flag(value: bool) -> str:
    return "true" if value else "false"


def extract_features(
    sentence: Sentence,
    index: int,
    window: tuple[int, ...] = DEFAULT_WINDOW,
) -> dict[str, float]:
    """Feature map for one token position; pure in (sentence, index, window)."""
    tokens = sentence.tokens
    if not 0 <= index < len(tokens):
        raise IndexOutOfRange(f"index {index} outside sentence of {len(tokens)} tokens")
    feats: dict[str, float] = {}
    for offset in window:
        prefix = f"{offset:+d}:" if offset else "0:"
        j = index + offset
        if j < 0:
            feats[prefix + "BOS"] = 1.0
            continue
        if j >= len(tokens):
            feats[prefix + "EOS"] = 1.0
            continue
        tok = tokens[j]
        s = tok.surface
        n = len(s)
        feats[prefix + "prefix2=" + s[:2]] = 1.0
        feats[prefix + "prefix3=" + s[:3]] = 1.0
        feats[prefix + "suffix2=" + s[-2:]] = 1.0
        feats[prefix + "suffix3=" + s[-3:]] = 1.0
        feats[prefix + f"len={n}"] = 1.0
        feats[prefix + "is_alpha=" + _flag(s.isalpha())] = 1.0
        feats[prefix + "is_number=" + _flag(bool(_NUMBER_RE.match(s)))] = 1.0
        n_punct = sum(_is_punct_char(c) for c in s)
        feats[prefix + "is_punct=" + _flag(n_punct == n)] = 1.0
        feats[prefix + "contains_at=" + _flag("@" in s)] = 1.0
        feats[prefix + "shape=" + _shape(s)] = 1.0
        for name, count in (
            ("upper_ratio", sum(c.isupper() for c in s)),
            ("digit_ratio", sum(c.isdigit() for c in s)),
            ("punct_ratio", n_punct),
        ):
            if count:
                feats[prefix + name] = count / n
        if tok.features:
            for key in _EXTRA_KEYS:
                if key in tok.features:
                    feats[prefix + f"{key}={tok.features[key]}"] = 1.0
    feats[f"0:sent_len={len(tokens)}"] = 1.0
    return feats


class FeatureAlphabet:
    """Mutable name-to-id mapping that can be frozen after training."""

    def __init__(self, names: list[str] | None = None, frozen: bool = False):
        self.index: dict[str, int] = {}
        for name in names or []:
            self.index.setdefault(name, len(self.index))
        self.frozen = frozen

    def __len__(self) -> int:
        return len(self.index)

    def lookup(self, name: str) -> int | None:
        found = self.index.get(name)
        if found is None and not self.frozen:
            found = self.index[name] = len(self.index)
        return found

    def names(self) -> list[str]:
        return sorted(self.index, key=self.index.__getitem__)

    def freeze(self) -> "FeatureAlphabet":
        self.frozen = True
        return self


def featurize(
    sentences: list[Sentence],
    window: tuple[int, ...] = DEFAULT_WINDOW,
    alphabet: FeatureAlphabet | None = None,
) -> tuple[csr_matrix, np.ndarray, FeatureAlphabet]:
    """Stack every token's features into one CSR matrix.

    Returns (X, lengths, alphabet): X has one row per token across all
    sentences in order; lengths holds each sentence's token count. With a
    frozen alphabet, unknown feature names are silently dropped.
    """
    if alphabet is None:
        alphabet = FeatureAlphabet()
    data: list[float] = []
    indices: list[int] = []
    indptr: list[int] = [0]
    lengths = np.array([len(s.tokens) for s in sentences], dtype=np.int64)
    for sent in sentences:
        for i in range(len(sent.tokens)):
            for name, value in extract_features(sent, i, window).items():
                col = alphabet.lookup(name)
                if col is not None:
                    indices.append(col)
                    data.append(value)
            indptr.append(len(indices))
    was_building = not alphabet.frozen
    if was_building:
        alphabet.freeze()
    X = csr_matrix(
        (np.asarray(data), np.asarray(indices, dtype=np.int64), np.asarray(indptr, dtype=np.int64)),
        shape=(int(lengths.sum()), len(alphabet)),
    )
    return X, lengths, alphabet
