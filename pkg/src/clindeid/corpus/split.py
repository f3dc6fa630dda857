"""Deterministic corpus partitioning and nested training-set subsampling."""
from __future__ import annotations

import math
import random

from ..errors import EmptyCorpus
from .bio import gold_sentences
from .types import CorpusSplit, Document, LabelSet, Sentence


def apportion(total: int, ratios: tuple[float, ...]) -> list[int]:
    """Split an integer total by ratios using largest-remainder rounding.

    Each part gets floor(total * ratio); leftover units go to the parts
    with the largest fractional remainders, earlier parts winning ties.
    The parts always sum to the total.
    """
    if total < 0:
        raise ValueError("total must be non-negative")
    if any(r < 0 for r in ratios):
        raise ValueError("ratios must be non-negative")
    s = sum(ratios)
    if not math.isclose(s, 1.0, rel_tol=0, abs_tol=1e-9):
        raise ValueError(f"ratios must sum to 1, got {s}")
    exact = [total * r for r in ratios]
    counts = [math.floor(e) for e in exact]
    leftover = total - sum(counts)
    order = sorted(range(len(ratios)), key=lambda i: (-(exact[i] - counts[i]), i))
    for i in order[:leftover]:
        counts[i] += 1
    return counts


def split_corpus(
    documents: list[Document],
    ratios: tuple[float, float, float] = (0.72, 0.08, 0.20),
    seed: int = 0,
) -> CorpusSplit:
    """Shuffle documents with the seed and cut train/dev/test partitions.

    Partition sizes come from largest-remainder rounding, so they are
    exact for any corpus size and every document lands in exactly one
    partition.
    """
    if not documents:
        raise EmptyCorpus("cannot split an empty document list")
    shuffled = list(documents)
    random.Random(seed).shuffle(shuffled)
    n_train, n_dev, n_test = apportion(len(shuffled), ratios)
    return CorpusSplit(
        train=shuffled[:n_train],
        dev=shuffled[n_train:n_train + n_dev],
        test=shuffled[n_train + n_dev:],
        seed=seed,
        ratios=ratios,
    )


def subsample_sentences(
    sentences: list[Sentence],
    fraction_pct: float,
    seed: int = 0,
) -> list[Sentence]:
    """Return the first floor(N * pct / 100) sentences of a seeded shuffle.

    Because the shuffled order depends only on the seed, smaller fractions
    are strict prefixes of larger ones: the 1% sample is contained in the
    5% sample, and 100% returns every sentence.
    """
    if not 0 < fraction_pct <= 100:
        raise ValueError(f"fraction_pct must be in (0, 100], got {fraction_pct}")
    if not sentences:
        raise EmptyCorpus("cannot subsample an empty sentence list")
    order = list(range(len(sentences)))
    random.Random(seed).shuffle(order)
    n = math.floor(len(sentences) * fraction_pct / 100)
    n = max(n, 1)
    return [sentences[i] for i in sorted(order[:n])]


def subsample_train(
    split: CorpusSplit,
    fraction_pct: float,
    seed: int,
    labels: LabelSet,
) -> list[Sentence]:
    """Nested subsample of the training partition, gold tags attached."""
    sentences = [s for doc in split.train for s in gold_sentences(doc, labels)]
    return subsample_sentences(sentences, fraction_pct, seed)
