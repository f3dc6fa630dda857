"""Penalized maximum-likelihood training of the linear-chain tagger."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.sparse import csr_matrix

from ..corpus import LabelSet, Sentence
from ..errors import DivergenceDetected, EmptyTrainingSet, UnknownLabel
from .features import featurize
from .inference import forward_backward, sentence_offsets, sequence_scores
from .model import CrfConfig, CrfModel
from .owlqn import minimize_owlqn

_MAX_OBJECTIVE_INCREASES = 5


@dataclass
class TrainingStats:
    """Optimization trace for one training run."""

    iterations: int
    objective_history: list[float] = field(default_factory=list)
    grad_norm: float = float("inf")
    wall_time_s: float = 0.0
    converged: bool = False
    n_train_sentences: int = 0
    n_dev_sentences: int = 0


def _encode_gold(sentences: list[Sentence], bio: list[str]) -> np.ndarray:
    index = {tag: i for i, tag in enumerate(bio)}
    ids = []
    for sent in sentences:
        if sent.gold is None:
            raise EmptyTrainingSet(f"sentence {sent.doc_id}:{sent.index} carries no gold tags")
        for tag in sent.gold:
            if tag not in index:
                raise UnknownLabel(f"gold tag {tag!r} not in label alphabet")
            ids.append(index[tag])
    return np.asarray(ids, dtype=np.int64)


def _empirical_counts(
    x: csr_matrix,
    lengths: np.ndarray,
    y: np.ndarray,
    n_labels: int,
) -> tuple[np.ndarray, np.ndarray]:
    onehot = csr_matrix(
        (np.ones(len(y)), (np.arange(len(y)), y)),
        shape=(len(y), n_labels),
    )
    state = np.asarray((x.T @ onehot).todense())
    trans = np.zeros((n_labels, n_labels))
    for start, n in zip(sentence_offsets(lengths), lengths):
        path = y[start:start + n]
        np.add.at(trans, (path[:-1], path[1:]), 1.0)
    return state, trans


def make_objective(
    x: csr_matrix,
    lengths: np.ndarray,
    y: np.ndarray,
    n_labels: int,
    c2: float,
    trans_mask: np.ndarray | None = None,
) -> Callable[[np.ndarray], tuple[float, np.ndarray]]:
    """Smooth part of the training objective: NLL + c2·‖w‖².

    The flat parameter vector packs state weights (n_features × n_labels)
    followed by transition weights (n_labels × n_labels). The returned
    callable yields (value, gradient) and is what both the optimizer and
    the finite-difference checks consume.
    """
    n_features = x.shape[1]
    emp_state, emp_trans = _empirical_counts(x, lengths, y, n_labels)
    if trans_mask is not None:
        emp_trans = emp_trans * trans_mask

    def objective(w: np.ndarray) -> tuple[float, np.ndarray]:
        state = w[:n_features * n_labels].reshape(n_features, n_labels)
        trans = w[n_features * n_labels:].reshape(n_labels, n_labels)
        emissions = x @ state
        fb = forward_backward(emissions, lengths, trans)
        nll = float(fb.log_z.sum() - sequence_scores(emissions, lengths, trans, y).sum())
        grad_state = np.asarray(x.T @ fb.marginals) - emp_state
        grad_trans = fb.trans_expected - emp_trans
        if trans_mask is not None:
            grad_trans = grad_trans * trans_mask
        grad = np.concatenate([grad_state.reshape(-1), grad_trans.reshape(-1)])
        return nll + c2 * float(w @ w), grad + 2.0 * c2 * w

    return objective


def fit_crf(
    train: list[Sentence],
    dev: list[Sentence] | None = None,
    config: CrfConfig | None = None,
    labels: LabelSet | None = None,
) -> tuple[CrfModel, TrainingStats]:
    """Train from gold-tagged sentences; deterministic for fixed inputs.

    The dev partition is carried through for reporting only: with a fixed
    iteration budget there is no early stopping to steer.
    """
    config = config or CrfConfig()
    labels = labels or LabelSet()
    if not train or all(len(s.tokens) == 0 for s in train):
        raise EmptyTrainingSet("no training sentences given")
    bio = labels.bio_labels()
    k = len(bio)

    started = time.perf_counter()
    x, lengths, alphabet = featurize(train, config.window)
    y = _encode_gold(train, bio)

    trans_mask = None
    if not config.all_transitions:
        trans_mask = np.zeros((k, k))
        for start, n in zip(sentence_offsets(lengths), lengths):
            path = y[start:start + n]
            trans_mask[path[:-1], path[1:]] = 1.0

    objective = make_objective(x, lengths, y, k, config.c2, trans_mask)
    result = minimize_owlqn(
        objective,
        np.zeros(x.shape[1] * k + k * k),
        l1=config.c1,
        max_iterations=config.max_iterations,
        tol=config.convergence_tol,
    )

    history = result.objective_history
    increases = sum(b > a + 1e-9 for a, b in zip(history, history[1:]))
    if increases > _MAX_OBJECTIVE_INCREASES:
        raise DivergenceDetected(f"objective rose on {increases} accepted steps")

    model = CrfModel(
        labels=labels,
        feature_names=alphabet.names(),
        state_weights=result.x[:x.shape[1] * k].reshape(x.shape[1], k),
        trans_weights=result.x[x.shape[1] * k:].reshape(k, k),
        config=config,
    )
    stats = TrainingStats(
        iterations=result.iterations,
        objective_history=history,
        grad_norm=result.grad_norm,
        wall_time_s=time.perf_counter() - started,
        converged=result.converged,
        n_train_sentences=len(train),
        n_dev_sentences=len(dev) if dev else 0,
    )
    return model, stats


def log_likelihood_and_gradient(
    model: CrfModel,
    batch: list[Sentence],
) -> tuple[float, np.ndarray]:
    """Evaluate the smooth training objective at the model's own weights."""
    if not batch:
        raise EmptyTrainingSet("empty batch")
    x, lengths, _ = featurize(batch, model.config.window, model.alphabet)
    y = _encode_gold(batch, model.bio)
    objective = make_objective(x, lengths, y, len(model.bio), model.config.c2)
    w = np.concatenate([model.state_weights.reshape(-1), model.trans_weights.reshape(-1)])
    return objective(w)
