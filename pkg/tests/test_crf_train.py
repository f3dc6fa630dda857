"""Training objective, gradient correctness, and end-to-end fitting."""
import numpy as np
import pytest
from scipy.sparse import random as sparse_random

from clindeid.corpus import Annotation, Document, LabelSet, gold_sentences
from clindeid.crf import CrfConfig, fit_crf, log_likelihood_and_gradient, make_objective
from clindeid.errors import EmptyTrainingSet, UnknownLabel

LABELS = LabelSet()


def random_problem(seed, n_tokens=12, n_features=8, n_labels=4):
    rng = np.random.default_rng(seed)
    x = sparse_random(
        n_tokens, n_features, density=0.4, random_state=rng, format="csr",
        data_rvs=lambda size: rng.normal(size=size),
    )
    lengths = []
    left = n_tokens
    while left > 0:
        n = min(int(rng.integers(1, 5)), left)
        lengths.append(n)
        left -= n
    y = rng.integers(0, n_labels, size=n_tokens)
    return x, np.array(lengths), y


def test_uniform_model_objective_is_log_label_count():
    x, lengths, y = random_problem(0, n_tokens=1, n_labels=4)
    x = x.multiply(0).tocsr()
    objective = make_objective(x, np.array([1]), y[:1], 4, c2=0.0)
    value, _ = objective(np.zeros(x.shape[1] * 4 + 16))
    assert value == pytest.approx(np.log(4))


def test_duplicating_a_sentence_doubles_its_contribution():
    x, lengths, y = random_problem(1, n_tokens=3)
    rng = np.random.default_rng(2)
    w = rng.normal(size=x.shape[1] * 4 + 16) * 0.3
    single = make_objective(x[:3], np.array([3]), y[:3], 4, c2=0.0)(w)[0]
    from scipy.sparse import vstack

    doubled = make_objective(
        vstack([x[:3], x[:3]]).tocsr(), np.array([3, 3]), np.tile(y[:3], 2), 4, c2=0.0
    )(w)[0]
    assert doubled == pytest.approx(2 * single, rel=1e-12)


def test_gradient_matches_central_finite_differences():
    for seed in range(3):
        x, lengths, y = random_problem(seed)
        objective = make_objective(x, lengths, y, 4, c2=0.1)
        rng = np.random.default_rng(100 + seed)
        w = rng.normal(size=x.shape[1] * 4 + 16) * 0.5
        _, grad = objective(w)
        step = 1e-5
        for coord in rng.choice(len(w), size=15, replace=False):
            probe = np.zeros_like(w)
            probe[coord] = step
            numeric = (objective(w + probe)[0] - objective(w - probe)[0]) / (2 * step)
            denom = max(abs(numeric), abs(grad[coord]), 1e-8)
            assert abs(numeric - grad[coord]) / denom < 1e-4


def train_sentences():
    texts = [
        ("Paciente de 64 años", [("Age", 12, 19)]),
        ("Paciente de 71 años", [("Age", 12, 19)]),
        ("Operado el 12/01/2016", [("Date", 11, 21)]),
        ("Operado el 03/02/2017", [("Date", 11, 21)]),
        ("Valorado por la Dra Lopez", [("Doctor", 16, 25)]),
        ("Valorado por el Dr Sancho", [("Doctor", 16, 25)]),
        ("Sin datos relevantes", []),
        ("Continúa estable", []),
    ]
    sents = []
    for i, (text, spans) in enumerate(texts):
        anns = [
            Annotation(f"T{j+1}", cat, a, b, text[a:b])
            for j, (cat, a, b) in enumerate(spans)
        ]
        sents.extend(gold_sentences(Document(id=f"d{i}", text=text, annotations=anns), LABELS))
    return sents


def test_fit_learns_the_training_data():
    sents = train_sentences()
    model, stats = fit_crf(sents, config=CrfConfig(max_iterations=60))
    assert model.tag(sents) == [s.gold for s in sents]
    assert stats.iterations >= 1
    assert stats.objective_history[-1] < stats.objective_history[0]


def test_training_is_deterministic():
    sents = train_sentences()
    m1, _ = fit_crf(sents, config=CrfConfig(max_iterations=25))
    m2, _ = fit_crf(sents, config=CrfConfig(max_iterations=25))
    assert np.array_equal(m1.state_weights, m2.state_weights)
    assert np.array_equal(m1.trans_weights, m2.trans_weights)


def test_extreme_regularization_collapses_to_majority_label():
    sents = train_sentences()
    model, _ = fit_crf(sents, config=CrfConfig(c1=1e6, c2=1e6, max_iterations=20))
    assert np.abs(model.state_weights).max() < 1e-3
    for tags in model.tag(sents):
        assert tags == ["O"] * len(tags)


def test_restricted_transitions_stay_at_zero():
    sents = train_sentences()
    model, _ = fit_crf(
        sents, config=CrfConfig(all_transitions=False, max_iterations=15)
    )
    seen = set()
    index = {tag: i for i, tag in enumerate(model.bio)}
    for s in sents:
        ids = [index[t] for t in s.gold]
        seen.update(zip(ids, ids[1:]))
    unseen = [
        (a, b)
        for a in range(len(model.bio))
        for b in range(len(model.bio))
        if (a, b) not in seen
    ]
    assert all(model.trans_weights[a, b] == 0.0 for a, b in unseen)
    assert np.abs(model.trans_weights).max() > 0


def test_objective_history_is_monotone():
    _, stats = fit_crf(train_sentences(), config=CrfConfig(max_iterations=40))
    hist = stats.objective_history
    assert all(b <= a + 1e-9 for a, b in zip(hist, hist[1:]))


def test_empty_training_set_is_rejected():
    with pytest.raises(EmptyTrainingSet):
        fit_crf([])


def test_unknown_gold_tag_is_rejected():
    sents = train_sentences()
    bad = sents[0].with_gold(["B-Spaceship"] + sents[0].gold[1:])
    with pytest.raises(UnknownLabel):
        fit_crf([bad] + sents[1:])


def test_log_likelihood_at_model_weights_is_finite_and_consistent():
    sents = train_sentences()
    model, _ = fit_crf(sents, config=CrfConfig(max_iterations=10))
    value, grad = log_likelihood_and_gradient(model, sents)
    assert np.isfinite(value)
    assert grad.shape == (len(model.feature_names) * len(model.bio) + len(model.bio) ** 2,)
