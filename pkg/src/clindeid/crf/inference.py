"""Log-domain forward-backward and Viterbi over batched sentences.

Sentences are grouped by length so each group runs as one (batch, n, K)
dynamic program; all scores stay in log space throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from ..errors import NumericalOverflow


def sentence_offsets(lengths: np.ndarray) -> np.ndarray:
    """Start row of each sentence inside the flat token axis."""
    return np.concatenate([[0], np.cumsum(lengths)[:-1]]).astype(np.int64)


def _length_groups(lengths: np.ndarray) -> dict[int, np.ndarray]:
    groups: dict[int, list[int]] = {}
    for s, n in enumerate(lengths):
        groups.setdefault(int(n), []).append(s)
    return {n: np.asarray(idx, dtype=np.int64) for n, idx in groups.items()}


def _gather_rows(offsets: np.ndarray, sent_idx: np.ndarray, n: int) -> np.ndarray:
    return (offsets[sent_idx][:, None] + np.arange(n)[None, :]).reshape(-1)


@dataclass
class ForwardBackward:
    """Marginals and partition values for a batch of sentences."""

    log_z: np.ndarray            # (S,) from the forward pass
    log_z_backward: np.ndarray   # (S,) same quantity from the backward pass
    marginals: np.ndarray        # (N, K) per-token posterior over labels
    trans_expected: np.ndarray   # (K, K) expected transition counts, summed


def forward_backward(
    emissions: np.ndarray,
    lengths: np.ndarray,
    trans: np.ndarray,
) -> ForwardBackward:
    """Run the sum-product recursions for every sentence."""
    n_tokens, k = emissions.shape
    offsets = sentence_offsets(lengths)
    log_z = np.empty(len(lengths))
    log_z_b = np.empty(len(lengths))
    marginals = np.empty((n_tokens, k))
    trans_expected = np.zeros((k, k))

    for n, sent_idx in _length_groups(lengths).items():
        rows = _gather_rows(offsets, sent_idx, n)
        em = emissions[rows].reshape(len(sent_idx), n, k)

        alpha = np.empty_like(em)
        alpha[:, 0] = em[:, 0]
        for t in range(1, n):
            alpha[:, t] = em[:, t] + logsumexp(
                alpha[:, t - 1][:, :, None] + trans[None, :, :], axis=1
            )
        beta = np.zeros_like(em)
        for t in range(n - 2, -1, -1):
            beta[:, t] = logsumexp(
                trans[None, :, :] + (em[:, t + 1] + beta[:, t + 1])[:, None, :], axis=2
            )
        z_f = logsumexp(alpha[:, -1], axis=1)
        z_b = logsumexp(em[:, 0] + beta[:, 0], axis=1)
        if not (np.isfinite(z_f).all() and np.isfinite(z_b).all()):
            raise NumericalOverflow("non-finite partition value; check weight magnitudes")

        log_z[sent_idx] = z_f
        log_z_b[sent_idx] = z_b
        marginals[rows] = np.exp(
            alpha + beta - z_f[:, None, None]
        ).reshape(-1, k)
        for t in range(1, n):
            joint = (
                alpha[:, t - 1][:, :, None]
                + trans[None, :, :]
                + (em[:, t] + beta[:, t])[:, None, :]
                - z_f[:, None, None]
            )
            trans_expected += np.exp(joint).sum(axis=0)
    return ForwardBackward(log_z, log_z_b, marginals, trans_expected)


def sequence_scores(
    emissions: np.ndarray,
    lengths: np.ndarray,
    trans: np.ndarray,
    labels: np.ndarray,
) -> np.ndarray:
    """Unnormalized log score of one given label path per sentence."""
    offsets = sentence_offsets(lengths)
    scores = np.empty(len(lengths))
    for s, (start, n) in enumerate(zip(offsets, lengths)):
        path = labels[start:start + n]
        scores[s] = emissions[np.arange(start, start + n), path].sum()
        scores[s] += trans[path[:-1], path[1:]].sum()
    return scores


def viterbi_decode(
    emissions: np.ndarray,
    lengths: np.ndarray,
    trans: np.ndarray,
) -> np.ndarray:
    """Best label id per token under state plus transition scores.

    Ties resolve toward the lowest label id at every argmax (numpy takes
    the first maximum), starting from the final position.
    """
    n_tokens, k = emissions.shape
    offsets = sentence_offsets(lengths)
    out = np.empty(n_tokens, dtype=np.int64)

    for n, sent_idx in _length_groups(lengths).items():
        rows = _gather_rows(offsets, sent_idx, n)
        em = emissions[rows].reshape(len(sent_idx), n, k)
        delta = np.empty_like(em)
        backptr = np.empty((len(sent_idx), n, k), dtype=np.int64)
        delta[:, 0] = em[:, 0]
        for t in range(1, n):
            step = delta[:, t - 1][:, :, None] + trans[None, :, :]
            backptr[:, t] = np.argmax(step, axis=1)
            delta[:, t] = em[:, t] + np.max(step, axis=1)
        best = np.empty((len(sent_idx), n), dtype=np.int64)
        best[:, -1] = np.argmax(delta[:, -1], axis=1)
        for t in range(n - 2, -1, -1):
            best[:, t] = backptr[np.arange(len(sent_idx)), t + 1, best[:, t + 1]]
        out[rows] = best.reshape(-1)
    return out
